#pragma once

#include <nlohmann/json_fwd.hpp>

#include "ellab/grid.hpp"

namespace ellab {

/// Built-in manufactured-function catalog. Entries are scalar fields selected
/// by id with JSON parameters:
///
///   constant       {"value": c}
///   monomial       {"alpha": [a1,...,an]}            prod x_i^{a_i}
///   coordinate     {"axis": i}                       x_i (0-based)
///   radial_power   {"exponent": g, "center": [...]}  |x-c|^g; the center node
///                  is excluded when the value is non-finite there
///   sign           {"axis": i}                        sign(x_i), sign(0)=0
///   sin_cos        {}                                 sin(x_1) cos(x_2)
///   harmonic_quad  {}                                 x_1^2 - x_2^2
///   bump           {"radius": R, "center": [...], "power": k}
///                  (1 - |x-c|^2/R^2)^k inside B_R(c), 0 outside (default k=8)
///   indicator_ball {"radius": R, "center": [...]}
///   one_plus_sin   {"axis": i, "amplitude": a}        1 + a sin(x_i)
///
/// Unknown ids raise; a non-finite evaluation at a node that is not flagged
/// excluded raises.
GridFunction sample(const std::string& catalog_id, const nlohmann::json& params, const Grid& grid);

/// Pointwise evaluator for the same catalog (used by oracles and by kernels
/// that need off-lattice values such as cut-off envelopes).
double catalog_eval(const std::string& catalog_id, const nlohmann::json& params, const Vec& x);

}  // namespace ellab
