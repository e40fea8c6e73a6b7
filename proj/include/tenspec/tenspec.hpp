#ifndef TENSPEC_TENSPEC_HPP
#define TENSPEC_TENSPEC_HPP

#include "bounds.hpp"
#include "digraph.hpp"
#include "eigen.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "report_json.hpp"
#include "search.hpp"
#include "tensor.hpp"

#endif  // TENSPEC_TENSPEC_HPP
