#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ellab/rational.hpp"

namespace ellab {

struct ProblemParams {
    int n = 2;
    int b = 1;
    int m = 1;
    Rational p;
    Rational lambda;
    int s = 0;
};

enum class RegularityCase { MorreyGain, BMO, Holder };

struct RegularityVerdict {
    RegularityCase kind;
    std::optional<Rational> morrey_exponent;  // (2b-s)p + lambda, case a (exact path)
    std::optional<Rational> sigma;            // 2b-s-(n-lambda)/p, case c (exact path)
    std::optional<double> morrey_value;       // numeric payload, both paths
    std::optional<double> sigma_value;
    std::optional<int> holder_degree;         // s0-1 for the low-order claim
    std::string space_label;                  // e.g. "L^{2,3}", "BMO", "C^{0,1/2}"
    bool proximity_warning = false;           // double input close to the BMO line
};

/// Thrown where the theory makes no claim: the point is covered under a
/// different derivative order, suggested when one exists.
struct NoClaimError : std::domain_error {
    explicit NoClaimError(const std::string& what, std::optional<int> suggestion = {})
        : std::domain_error(what), suggested_s(suggestion) {}
    std::optional<int> suggested_s;
};

/// Least non-negative s0 with n/(2b - s0) > 1; closed form max(0, 2b-n+1).
int least_order_s0(int n, int b);

/// Case selection for D^s u: a (Morrey gain), b (BMO, exact equality only),
/// or c (Holder with sigma_s).
RegularityVerdict classify(const ProblemParams& params);

/// Same over doubles: strict comparisons, warning when within 1e-9 of the
/// BMO line instead of silently snapping onto it.
RegularityVerdict classify(int n, int b, int s, double p, double lambda);

/// Holder class of u itself when s0 >= 1 and p in (1, (n-lambda)/(2b-s0)):
/// C^{s0-1, 2b-s0+1-(n-lambda)/p}.
RegularityVerdict low_order_holder(const ProblemParams& params);

struct DiagramGeometry {
    int n = 0, b = 0, s0 = 0;
    std::vector<std::pair<double, double>> b_points;  // B_s = (n/(2b-s), 0), s = s0..2b-1
    std::vector<std::pair<double, double>> a_points;  // A_s = (1, n-2b+s)
    // Quadrilateral Q_s has vertices B_s, B_{s+1}, A_{s+1}, A_s for
    // s = s0..2b-2; Q_{2b-1} is the unbounded region above the last line.
};

DiagramGeometry diagram_geometry(int n, int b);

/// C(p, lambda) = intersection of {p = 1} with the line through (p, lambda)
/// and (0, n); its ordinate is n - (n - lambda)/p.
std::pair<double, double> diagram_point_c(int n, double p, double lambda);

/// |C A_s|, which equals sigma_s for points classified case c at index s.
double segment_ca_length(int n, int b, int s, double p, double lambda);

/// Index s whose region (triangle B B_s A_s for case a, segment for b,
/// quadrilateral Q_s for c) contains (p, lambda), with the matching case;
/// nullopt when the point is outside the classified semistrip.
struct DiagramLocation {
    int s;
    RegularityCase kind;
};
std::optional<DiagramLocation> locate_in_diagram(int n, int b, double p, double lambda);

/// SVG rendering with the fixed palette (golden-file testable) and the
/// geometry as CSV rows.
std::string render_diagram_svg(int n, int b, std::optional<std::pair<double, double>> query = {});
std::string diagram_csv(int n, int b);

}  // namespace ellab
