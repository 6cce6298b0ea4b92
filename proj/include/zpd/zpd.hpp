#ifndef ZPD_ZPD_HPP_
#define ZPD_ZPD_HPP_

#include "zpd/errors.hpp"
#include "zpd/jets.hpp"
#include "zpd/model.hpp"
#include "zpd/pdfs.hpp"
#include "zpd/quad.hpp"
#include "zpd/simulate.hpp"
#include "zpd/specfun.hpp"

#endif  // ZPD_ZPD_HPP_
