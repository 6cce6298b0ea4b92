// zpd: distributions of Z = sum_{l=1}^{L} X_l Y_l for correlated zero-mean
// complex Gaussian pairs. Subcommands evaluate the analytic densities to CSV,
// run seeded Monte-Carlo simulations, score goodness of fit, and emit the
// CSV+gnuplot bundles for the three validation figures.
//
// Exit codes: 0 success (gof: test passed), 1 gof test rejected,
// 2 usage error, 3 domain error, 4 numerical non-convergence/overflow,
// 5 IO or parse error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zpd/zpd.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace zpd;

namespace {

constexpr double kPi = std::numbers::pi;

struct Options {
    ModelParams params{0.7, 1.5, 0.5, kPi / 6.0, 5};
    int threads = 0;  // 0: hardware concurrency, capped by ZPD_THREADS
};

int resolve_threads(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* cap = std::getenv("ZPD_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1) n = std::min(n, c);
    }
    return n;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    if (const fs::path dir = fs::path(path).parent_path(); !dir.empty()) {
        std::error_code ec;
        fs::create_directories(dir, ec);
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

// upper amplitude bound covering all but `tail` of the corrected law
double amplitude_upper_bound(const ModelParams& p, double tail = 1e-9) {
    const double rate = 2.0 * (1.0 - p.mu_abs) / (p.sigma_prod() * p.mu_deficit());
    double hi = 10.0 / rate;
    while (amplitude_pdf(p, hi) / rate > tail && hi < 1e6) hi *= 1.5;
    return hi;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalArgs {
    std::string pdf;
    std::string method = "exact";
    int t_terms = -1;  // -1: default T = L
    int grid = 0;      // 0: per-kind default
    double r_max = 0.0;
    double theta = 0.0;  // joint slice angle
    std::string out;
};

void cmd_eval(const Options& opt, const EvalArgs& args) {
    const ModelParams p = validate(opt.params);
    const int t_terms = args.t_terms >= 0 ? args.t_terms : p.big_l;
    auto out = open_out(args.out);

    if (args.pdf == "amplitude") {
        const int n = args.grid > 0 ? args.grid : 512;
        const double r_max = args.r_max > 0.0 ? args.r_max : amplitude_upper_bound(p);
        const auto grid = amplitude_grid(r_max, n);
        const auto corrected = make_amplitude_curve(p, grid, false);
        const auto legacy = make_amplitude_curve(p, grid, true);
        out << "r,density,density_legacy\n";
        for (int i = 0; i < n; ++i)
            out << fmt(grid[i]) << ',' << fmt(corrected.values[i]) << ',' << fmt(legacy.values[i]) << '\n';
    } else if (args.pdf == "phase") {
        const int n = args.grid > 0 ? args.grid : 721;
        const auto grid = phase_grid(n);
        if (args.method == "approx") {
            const PhaseEngine exact(p, PhaseMethod::exact_jet);
            const PhaseEngine series(p, PhaseMethod::series_approx, t_terms);
            out << "theta,density,density_approx\n";
            for (double th : grid) out << fmt(th) << ',' << fmt(exact(th)) << ',' << fmt(series(th)) << '\n';
        } else {
            const PhaseMethod method =
                args.method == "quadrature" ? PhaseMethod::quadrature : PhaseMethod::exact_jet;
            const PhaseEngine engine(p, method);
            out << "theta,density\n";
            for (double th : grid) out << fmt(th) << ',' << fmt(engine(th)) << '\n';
        }
    } else {  // joint slice along a ray
        const int n = args.grid > 0 ? args.grid : 512;
        const double r_max = args.r_max > 0.0 ? args.r_max : amplitude_upper_bound(p);
        const auto curve = make_joint_slice_curve(p, args.theta, amplitude_grid(r_max, n));
        out << "r,density\n";
        for (int i = 0; i < n; ++i) out << fmt(curve.grid[i]) << ',' << fmt(curve.values[i]) << '\n';
    }
    out.flush();
    if (!out) throw IoError("write failure on '" + args.out + "'");
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

struct SampleArgs {
    std::size_t n = 100000;
    std::uint64_t seed = 42;
    std::string format = "csv";
    std::string out;
};

void cmd_sample(const Options& opt, const SampleArgs& args) {
    const ModelParams p = validate(opt.params);
    SampleWriter writer(args.out,
                        args.format == "binary" ? SampleWriter::Format::binary : SampleWriter::Format::csv);
    // stream chunk by chunk; moments accumulate online so arbitrarily large
    // n never needs a full in-memory batch
    std::vector<Complex> chunk;
    double sum_re = 0.0, sum_im = 0.0, sum_sq_re = 0.0, sum_sq_im = 0.0;
    const std::size_t n_chunks = (args.n + kSampleChunk - 1) / kSampleChunk;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        const std::size_t count = std::min(kSampleChunk, args.n - c * kSampleChunk);
        chunk.resize(count);
        sample_z_chunk(p, args.seed, c, count, chunk.data());
        writer.append(chunk);
        for (const auto& z : chunk) {
            sum_re += z.real();
            sum_im += z.imag();
            sum_sq_re += z.real() * z.real();
            sum_sq_im += z.imag() * z.imag();
        }
    }
    writer.finish();
    const double n = static_cast<double>(args.n);
    json report;
    report["command"] = "sample";
    report["n"] = args.n;
    report["seed"] = args.seed;
    report["out"] = args.out;
    report["mean_re"] = sum_re / n;
    report["mean_im"] = sum_im / n;
    report["var_re"] = sum_sq_re / n - (sum_re / n) * (sum_re / n);
    report["var_im"] = sum_sq_im / n - (sum_im / n) * (sum_im / n);
    std::printf("%s\n", report.dump().c_str());
}

// ---------------------------------------------------------------------------
// gof
// ---------------------------------------------------------------------------

struct GofArgs {
    std::string input;
    std::string target;  // amplitude | phase
    std::string formula = "corrected";  // amplitude: corrected | legacy
    std::string method = "exact";       // phase: exact | approx
    int t_terms = -1;
};

int cmd_gof(const Options& opt, const GofArgs& args) {
    const ModelParams p = validate(opt.params);
    const auto z = read_samples(args.input);
    if (z.empty()) throw ParseError("sample file '" + args.input + "' holds no samples");

    std::vector<double> projection(z.size());
    std::function<double(double)> density;
    double lo = 0.0, hi = 0.0;
    if (args.target == "amplitude") {
        for (std::size_t i = 0; i < z.size(); ++i) projection[i] = to_polar(z[i]).r;
        hi = *std::max_element(projection.begin(), projection.end()) * 1.25;
        if (args.formula == "legacy")
            density = [p](double r) { return amplitude_pdf_legacy(p, r); };
        else
            density = [p](double r) { return amplitude_pdf(p, r); };
    } else {
        for (std::size_t i = 0; i < z.size(); ++i) projection[i] = to_polar(z[i]).theta;
        lo = -kPi;
        hi = kPi;
        if (args.method == "approx") {
            const PhaseEngine engine(p, PhaseMethod::series_approx,
                                     args.t_terms >= 0 ? args.t_terms : p.big_l);
            density = [engine](double th) { return std::max(0.0, engine(th)); };
        } else {
            density = [p](double th) { return phase_pdf_exact(p, th); };
        }
    }

    const GofReport rep = gof(projection, density, lo, hi);
    json line;
    line["command"] = "gof";
    line["input"] = args.input;
    line["target"] = args.target;
    line[args.target == "amplitude" ? "formula" : "method"] =
        args.target == "amplitude" ? args.formula : args.method;
    line["n"] = rep.n;
    line["ks"] = rep.ks_stat;
    line["ks_critical_1pct"] = rep.ks_critical_1pct();
    line["ks_pass"] = rep.ks_pass_1pct();
    line["chi2"] = rep.chi2_stat;
    line["chi2_dof"] = rep.chi2_dof;
    line["tv"] = rep.tv_distance;
    std::printf("%s\n", line.dump().c_str());
    return rep.ks_pass_1pct() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareArgs {
    std::size_t n = 100000;
    std::uint64_t seed = 42;
};

void cmd_compare(const Options& opt, const CompareArgs& args) {
    const ModelParams p = validate(opt.params);
    const auto batch = sample_z(p, args.n, args.seed, resolve_threads(opt.threads));
    std::vector<double> amps(batch.n());
    for (std::size_t i = 0; i < batch.n(); ++i) amps[i] = to_polar(batch.z[i]).r;
    const double hi = *std::max_element(amps.begin(), amps.end()) * 1.25;
    const auto corrected = gof(amps, [&](double r) { return amplitude_pdf(p, r); }, 0.0, hi);
    const auto legacy = gof(amps, [&](double r) { return amplitude_pdf_legacy(p, r); }, 0.0, hi);
    json line;
    line["command"] = "compare";
    line["n"] = args.n;
    line["seed"] = args.seed;
    line["L"] = p.big_l;
    line["ks_corrected"] = corrected.ks_stat;
    line["ks_legacy"] = legacy.ks_stat;
    line["ks_critical_1pct"] = corrected.ks_critical_1pct();
    line["corrected_pass"] = corrected.ks_pass_1pct();
    line["legacy_pass"] = legacy.ks_pass_1pct();
    line["ks_ratio"] = legacy.ks_stat / corrected.ks_stat;
    std::printf("%s\n", line.dump().c_str());
}

// ---------------------------------------------------------------------------
// reproduce-figures
// ---------------------------------------------------------------------------

struct FigureArgs {
    std::string outdir = "figures";
    std::size_t n = 100000;
    std::uint64_t seed = 42;
};

// cell average of f over [x0,x0+w] x [y0,y0+h] with a 3x3 Gauss rule
template <class F>
double cell_average(F&& f, double x0, double y0, double w, double h) {
    static const double node[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
    static const double weight[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            acc += weight[i] * weight[j] *
                   f(x0 + 0.5 * w * (1.0 + node[i]), y0 + 0.5 * h * (1.0 + node[j]));
    return acc;
}

void write_grid_csv(const std::string& path, const std::vector<double>& x_edges,
                    const std::vector<double>& y_edges, const std::vector<double>& density) {
    auto out = open_out(path);
    out << "x,y,density\n";
    const std::size_t bx = x_edges.size() - 1;
    for (std::size_t iy = 0; iy + 1 < y_edges.size(); ++iy)
        for (std::size_t ix = 0; ix < bx; ++ix)
            out << fmt(0.5 * (x_edges[ix] + x_edges[ix + 1])) << ','
                << fmt(0.5 * (y_edges[iy] + y_edges[iy + 1])) << ',' << fmt(density[iy * bx + ix]) << '\n';
}

void cmd_reproduce_figures(const Options& opt, const FigureArgs& args) {
    ModelParams base = validate(opt.params);
    const fs::path root(args.outdir);
    const int threads = resolve_threads(opt.threads);

    // --- Figure 1: 2-D histogram vs analytic grids at L = 5 ---
    {
        ModelParams p = base;
        p.big_l = 5;
        const fs::path dir = root / "fig1";
        const auto batch = sample_z(p, args.n, args.seed, threads);
        const CdfTable amp_cdf([&](double r) { return amplitude_pdf(p, r); }, 0.0, amplitude_upper_bound(p));
        const double ext = amp_cdf.quantile(1.0 - 1e-5);
        const int bins = 80;
        const auto hist = histogram_2d(batch.z, bins, bins, -ext, ext, -ext, ext);
        write_grid_csv((dir / "sim_hist.csv").string(), hist.x_edges, hist.y_edges, hist.mass);

        const double cell = 2.0 * ext / bins;
        std::vector<double> eq14(bins * bins), legacy(bins * bins);
        for (int iy = 0; iy < bins; ++iy)
            for (int ix = 0; ix < bins; ++ix) {
                const double x0 = -ext + ix * cell, y0 = -ext + iy * cell;
                eq14[iy * bins + ix] =
                    cell_average([&](double x, double y) { return joint_pdf(p, x, y); }, x0, y0, cell, cell);
                legacy[iy * bins + ix] = cell_average(
                    [&](double x, double y) { return joint_pdf_legacy(p, x, y); }, x0, y0, cell, cell);
            }
        write_grid_csv((dir / "analytic_grid.csv").string(), hist.x_edges, hist.y_edges, eq14);
        write_grid_csv((dir / "legacy_grid.csv").string(), hist.x_edges, hist.y_edges, legacy);

        auto gp = open_out((dir / "fig1.gp").string());
        gp << "# gnuplot script: 2-D histogram of Z vs analytic grids (L = 5)\n"
              "set terminal pngcairo size 1500,520\nset output 'fig1.png'\n"
              "set multiplot layout 1,3\nset view map\nset xlabel 'Re Z'\nset ylabel 'Im Z'\n"
              "set title 'simulated'\nsplot 'sim_hist.csv' every ::1 u 1:2:3 w points pt 5 ps 0.6 palette notitle\n"
              "set title 'corrected joint PDF'\nsplot 'analytic_grid.csv' every ::1 u 1:2:3 w points pt 5 ps 0.6 palette notitle\n"
              "set title 'legacy joint PDF'\nsplot 'legacy_grid.csv' every ::1 u 1:2:3 w points pt 5 ps 0.6 palette notitle\n"
              "unset multiplot\n";
    }

    // --- Figures 2 and 3: amplitude and phase, L in {1, 5, 10} ---
    const int curve_points = 721;
    for (const int big_l : {1, 5, 10}) {
        ModelParams p = base;
        p.big_l = big_l;
        const auto batch = sample_z(p, args.n, args.seed, threads);

        // amplitude bundle
        {
            const fs::path dir = root / "fig2";
            std::vector<double> amps(batch.n());
            for (std::size_t i = 0; i < batch.n(); ++i) amps[i] = to_polar(batch.z[i]).r;
            const double r_hi = *std::max_element(amps.begin(), amps.end()) * 1.02;
            const auto hist = histogram_1d(amps, 100, 0.0, r_hi);
            auto hout = open_out((dir / ("amp_hist_L" + std::to_string(big_l) + ".csv")).string());
            hout << "r,density\n";
            for (int b = 0; b < 100; ++b)
                hout << fmt(0.5 * (hist.edges[b] + hist.edges[b + 1])) << ',' << fmt(hist.mass[b]) << '\n';

            const auto grid = amplitude_grid(r_hi, curve_points);
            auto cout_ = open_out((dir / ("amp_curves_L" + std::to_string(big_l) + ".csv")).string());
            cout_ << "r,density,density_legacy\n";
            for (double r : grid)
                cout_ << fmt(r) << ',' << fmt(amplitude_pdf(p, r)) << ',' << fmt(amplitude_pdf_legacy(p, r))
                      << '\n';
        }

        // phase bundle; series curve only where the approximation exists
        {
            const fs::path dir = root / "fig3";
            std::vector<double> phases(batch.n());
            for (std::size_t i = 0; i < batch.n(); ++i) phases[i] = to_polar(batch.z[i]).theta;
            const auto hist = histogram_1d(phases, 100, -kPi, kPi);
            auto hout = open_out((dir / ("phase_hist_L" + std::to_string(big_l) + ".csv")).string());
            hout << "theta,density\n";
            for (int b = 0; b < 100; ++b)
                hout << fmt(0.5 * (hist.edges[b] + hist.edges[b + 1])) << ',' << fmt(hist.mass[b]) << '\n';

            const auto grid = phase_grid(curve_points);
            const PhaseEngine exact(p, PhaseMethod::exact_jet);
            auto cout_ = open_out((dir / ("phase_curves_L" + std::to_string(big_l) + ".csv")).string());
            if (big_l >= 2) {
                const PhaseEngine series(p, PhaseMethod::series_approx, big_l);
                cout_ << "theta,density_exact,density_approx\n";
                for (double th : grid)
                    // plotting output clamps the raw series value at zero
                    cout_ << fmt(th) << ',' << fmt(exact(th)) << ',' << fmt(std::max(0.0, series(th)))
                          << '\n';
            } else {
                cout_ << "theta,density_exact\n";
                for (double th : grid) cout_ << fmt(th) << ',' << fmt(exact(th)) << '\n';
            }
        }
    }
    {
        auto gp = open_out((root / "fig2" / "fig2.gp").string());
        gp << "# gnuplot script: amplitude histograms vs analytic PDFs, L in {1,5,10}\n"
              "set terminal pngcairo size 1500,420\nset output 'fig2.png'\n"
              "set multiplot layout 1,3\nset xlabel 'r'\nset ylabel 'f_R(r)'\nset style fill solid 0.35\n";
        for (int big_l : {1, 5, 10})
            gp << "set title 'L = " << big_l << "'\n"
               << "plot 'amp_hist_L" << big_l << ".csv' every ::1 u 1:2 w boxes t 'simulated', "
               << "'amp_curves_L" << big_l << ".csv' every ::1 u 1:2 w lines lw 2 t 'corrected', "
               << "'amp_curves_L" << big_l << ".csv' every ::1 u 1:3 w lines lw 2 dt 2 t 'legacy'\n";
        gp << "unset multiplot\n";
    }
    {
        auto gp = open_out((root / "fig3" / "fig3.gp").string());
        gp << "# gnuplot script: phase histograms vs analytic PDFs, L in {1,5,10}\n"
              "set terminal pngcairo size 1500,420\nset output 'fig3.png'\n"
              "set multiplot layout 1,3\nset xlabel 'theta'\nset ylabel 'f_Theta(theta)'\n"
              "set style fill solid 0.35\nset xrange [-pi:pi]\n";
        for (int big_l : {1, 5, 10}) {
            gp << "set title 'L = " << big_l << "'\n"
               << "plot 'phase_hist_L" << big_l << ".csv' every ::1 u 1:2 w boxes t 'simulated', "
               << "'phase_curves_L" << big_l << ".csv' every ::1 u 1:2 w lines lw 2 t 'exact'";
            if (big_l >= 2) gp << ", 'phase_curves_L" << big_l << ".csv' every ::1 u 1:3 w lines lw 2 dt 2 t 'series'";
            gp << "\n";
        }
        gp << "unset multiplot\n";
    }
    std::printf("{\"command\":\"reproduce-figures\",\"outdir\":\"%s\",\"bundles\":[\"fig1\",\"fig2\",\"fig3\"]}\n",
                args.outdir.c_str());
}

void add_param_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--sigma_x,--sigma-x", opt.params.sigma_x, "std. dev. of X")->capture_default_str();
    cmd->add_option("--sigma_y,--sigma-y", opt.params.sigma_y, "std. dev. of Y")->capture_default_str();
    cmd->add_option("--mu_abs,--mu-abs", opt.params.mu_abs, "correlation magnitude |mu| in [0,1)")
        ->capture_default_str();
    cmd->add_option("--epsilon", opt.params.epsilon, "correlation phase (radians)")->capture_default_str();
    cmd->add_option("-L,--L", opt.params.big_l, "number of summed products")->capture_default_str();
    cmd->add_option("--threads", opt.threads, "worker cap (0 = auto; env ZPD_THREADS also caps)")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributions of sums of products of correlated complex Gaussians"};
    app.require_subcommand(1);
    app.set_config("--config")->description("flat key=value config (sigma_x, sigma_y, mu_abs, epsilon, L)");

    Options opt;
    add_param_options(&app, opt);
    app.fallthrough();

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "evaluate analytic densities to CSV");
    eval->add_option("--pdf", eval_args.pdf, "amplitude | phase | joint")
        ->required()
        ->check(CLI::IsMember({"amplitude", "phase", "joint"}));
    eval->add_option("--method", eval_args.method, "phase method: exact | approx | quadrature")
        ->check(CLI::IsMember({"exact", "approx", "quadrature"}));
    eval->add_option("--t_terms,--t-terms", eval_args.t_terms, "series truncation (default: L)");
    eval->add_option("--grid", eval_args.grid, "number of grid points");
    eval->add_option("--r_max,--r-max", eval_args.r_max, "amplitude/joint grid extent");
    eval->add_option("--theta", eval_args.theta, "joint slice angle (radians)");
    eval->add_option("-o,--out", eval_args.out, "output CSV path")->required();

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "generate seeded realizations of Z");
    sample->add_option("-n,--n", sample_args.n, "realization count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sample->add_option("--seed", sample_args.seed, "RNG seed")->capture_default_str();
    sample->add_option("--format", sample_args.format, "csv | binary")
        ->check(CLI::IsMember({"csv", "binary"}))
        ->capture_default_str();
    sample->add_option("-o,--out", sample_args.out, "output path")->required();

    GofArgs gof_args;
    auto* gofc = app.add_subcommand("gof", "goodness of fit of a sample file against an analytic density");
    gofc->add_option("-i,--input", gof_args.input, "sample file (csv or ZPD1 binary)")->required();
    gofc->add_option("--target", gof_args.target, "amplitude | phase")
        ->required()
        ->check(CLI::IsMember({"amplitude", "phase"}));
    gofc->add_option("--formula", gof_args.formula, "amplitude law: corrected | legacy")
        ->check(CLI::IsMember({"corrected", "legacy"}))
        ->capture_default_str();
    gofc->add_option("--method", gof_args.method, "phase law: exact | approx")
        ->check(CLI::IsMember({"exact", "approx"}))
        ->capture_default_str();
    gofc->add_option("--t_terms,--t-terms", gof_args.t_terms, "series truncation (default: L)");

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "KS of simulated amplitudes: corrected vs legacy law");
    compare->add_option("-n,--n", compare_args.n, "realization count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compare->add_option("--seed", compare_args.seed, "RNG seed")->capture_default_str();

    FigureArgs fig_args;
    auto* figs = app.add_subcommand("reproduce-figures", "emit CSV + gnuplot bundles for the three figures");
    figs->add_option("--outdir", fig_args.outdir, "output directory")->capture_default_str();
    figs->add_option("-n,--n", fig_args.n, "realization count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    figs->add_option("--seed", fig_args.seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (eval->parsed()) cmd_eval(opt, eval_args);
        if (sample->parsed()) cmd_sample(opt, sample_args);
        if (gofc->parsed()) return cmd_gof(opt, gof_args);
        if (compare->parsed()) cmd_compare(opt, compare_args);
        if (figs->parsed()) cmd_reproduce_figures(opt, fig_args);
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const OverflowError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    } catch (const ResourceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    }
    return 0;
}
