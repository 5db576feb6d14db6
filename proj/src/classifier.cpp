#include "ellab/classifier.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ellab {

namespace {

void check_common(int n, int b, int m) {
    if (n < 2) throw std::invalid_argument("classifier: n must be >= 2");
    if (b < 1) throw std::invalid_argument("classifier: b must be >= 1");
    if (m < 1) throw std::invalid_argument("classifier: m must be >= 1");
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

}  // namespace

int least_order_s0(int n, int b) {
    check_common(n, b, 1);
    return std::max(0, 2 * b - n + 1);
}

RegularityVerdict classify(const ProblemParams& params) {
    const int n = params.n, b = params.b, s = params.s;
    check_common(n, b, params.m);
    if (!(params.p > Rational(1)))
        throw std::invalid_argument("classifier: p must be > 1");
    if (!(params.lambda > Rational(0) && params.lambda < Rational(n)))
        throw std::invalid_argument("classifier: lambda must lie in (0, n)");
    const int s0 = least_order_s0(n, b);
    if (s < s0 || s > 2 * b - 1)
        throw std::invalid_argument("classifier: s must lie in {s0,...,2b-1}");

    const Rational gap = Rational(n) - params.lambda;     // n - lambda
    const Rational threshold = gap / Rational(2 * b - s); // BMO line at this s

    RegularityVerdict v;
    if (params.p < threshold) {
        v.kind = RegularityCase::MorreyGain;
        v.morrey_exponent = Rational(2 * b - s) * params.p + params.lambda;
        v.morrey_value = v.morrey_exponent->to_double();
        v.space_label = "L^{" + params.p.str() + "," + v.morrey_exponent->str() + "}";
        return v;
    }
    if (params.p == threshold) {
        v.kind = RegularityCase::BMO;
        v.space_label = "BMO";
        return v;
    }
    // p above the BMO line: Holder up to the next line, no claim past it.
    if (s < 2 * b - 1) {
        const Rational upper = gap / Rational(2 * b - s - 1);
        if (params.p >= upper)
            throw NoClaimError("no claim at this (p,lambda,s); see s = " + std::to_string(s + 1),
                               s + 1);
    }
    v.kind = RegularityCase::Holder;
    v.sigma = Rational(2 * b - s) - gap / params.p;
    v.sigma_value = v.sigma->to_double();
    v.space_label = "C^{0," + v.sigma->str() + "}";
    return v;
}

RegularityVerdict classify(int n, int b, int s, double p, double lambda) {
    check_common(n, b, 1);
    if (!(p > 1.0)) throw std::invalid_argument("classifier: p must be > 1");
    if (!(lambda > 0.0 && lambda < n))
        throw std::invalid_argument("classifier: lambda must lie in (0, n)");
    const int s0 = least_order_s0(n, b);
    if (s < s0 || s > 2 * b - 1)
        throw std::invalid_argument("classifier: s must lie in {s0,...,2b-1}");

    const double gap = n - lambda;
    const double threshold = gap / (2 * b - s);
    const bool near_line = std::abs(p - threshold) <= 1e-9 * std::max(1.0, threshold);

    RegularityVerdict v;
    v.proximity_warning = near_line && p != threshold;
    if (p < threshold) {
        v.kind = RegularityCase::MorreyGain;
        const double mu = (2 * b - s) * p + lambda;
        v.morrey_value = mu;
        v.space_label = "L^{" + fmt(p) + "," + fmt(mu) + "}";
        return v;
    }
    if (p == threshold) {
        v.kind = RegularityCase::BMO;
        v.space_label = "BMO";
        return v;
    }
    if (s < 2 * b - 1 && p >= gap / (2 * b - s - 1))
        throw NoClaimError("no claim at this (p,lambda,s); see s = " + std::to_string(s + 1),
                           s + 1);
    v.kind = RegularityCase::Holder;
    const double sigma = (2 * b - s) - gap / p;
    v.sigma_value = sigma;
    v.space_label = "C^{0," + fmt(sigma) + "}";
    return v;
}

RegularityVerdict low_order_holder(const ProblemParams& params) {
    const int n = params.n, b = params.b;
    check_common(n, b, params.m);
    const int s0 = least_order_s0(n, b);
    if (s0 < 1) throw NoClaimError("low-order Holder claim requires s0 >= 1 (2b >= n)");
    if (!(params.lambda > Rational(0) && params.lambda < Rational(n)))
        throw std::invalid_argument("classifier: lambda must lie in (0, n)");

    const Rational upper = (Rational(n) - params.lambda) / Rational(2 * b - s0);
    if (!(Rational(1) < upper))
        throw NoClaimError("low-order Holder interval (1, " + upper.str() + ") is empty");
    if (!(params.p > Rational(1) && params.p < upper))
        throw NoClaimError("p outside the low-order Holder interval (1, " + upper.str() + ")");

    const Rational gamma =
        Rational(2 * b - s0 + 1) - (Rational(n) - params.lambda) / params.p;
    // The interval bounds pin n < (2b-s0+1)p + lambda < n + p.
    const Rational mid = Rational(2 * b - s0 + 1) * params.p + params.lambda;
    if (!(Rational(n) < mid && mid < Rational(n) + params.p))
        throw std::logic_error("classifier: low-order exponent bracket violated");

    RegularityVerdict v;
    v.kind = RegularityCase::Holder;
    v.sigma = gamma;
    v.sigma_value = gamma.to_double();
    v.holder_degree = s0 - 1;
    v.space_label = "C^{" + std::to_string(s0 - 1) + "," + gamma.str() + "}";
    return v;
}

DiagramGeometry diagram_geometry(int n, int b) {
    check_common(n, b, 1);
    DiagramGeometry g;
    g.n = n;
    g.b = b;
    g.s0 = least_order_s0(n, b);
    for (int s = g.s0; s <= 2 * b - 1; ++s) {
        g.b_points.emplace_back(static_cast<double>(n) / (2 * b - s), 0.0);
        g.a_points.emplace_back(1.0, static_cast<double>(n - 2 * b + s));
    }
    return g;
}

std::pair<double, double> diagram_point_c(int n, double p, double lambda) {
    return {1.0, n - (n - lambda) / p};
}

double segment_ca_length(int n, int b, int s, double p, double lambda) {
    const auto c = diagram_point_c(n, p, lambda);
    const double a_ord = n - 2 * b + s;
    return std::abs(c.second - a_ord);
}

std::optional<DiagramLocation> locate_in_diagram(int n, int b, double p, double lambda) {
    check_common(n, b, 1);
    if (!(p > 1.0 && lambda > 0.0 && lambda < n)) return std::nullopt;
    const int s0 = least_order_s0(n, b);
    const double u = (n - lambda) / p;  // ray invariant through (0, n)
    if (u >= 2 * b - s0)
        return DiagramLocation{s0, u == 2 * b - s0 ? RegularityCase::BMO
                                                   : RegularityCase::MorreyGain};
    for (int s = s0; s <= 2 * b - 1; ++s) {
        if (u == 2 * b - s) return DiagramLocation{s, RegularityCase::BMO};
        if (u > 2 * b - s - 1 && u < 2 * b - s)
            return DiagramLocation{s, RegularityCase::Holder};
    }
    // u <= 0 cannot happen inside the semistrip.
    return std::nullopt;
}

namespace {

// Fixed palette for golden-file testing: triangle (case a), then the
// quadrilaterals Q_s in order; Q_{2b-1} additionally carries the hatch.
const char* kTriangleFill = "#4c72b0";
const char* kQuadFills[] = {"#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3"};
const char* kLineStroke = "#333333";
const char* kQueryColor = "#d62728";

struct SvgMap {
    double n, pmax;
    double x(double p) const { return 60.0 + (p - 1.0) / (pmax - 1.0) * 520.0; }
    double y(double lam) const { return 30.0 + (n - lam) / n * 400.0; }
};

std::string poly(const SvgMap& mp, const std::vector<std::pair<double, double>>& pts,
                 const std::string& fill, const std::string& extra = "") {
    std::ostringstream os;
    os << "<polygon points=\"";
    for (const auto& [p, lam] : pts) os << fmt(mp.x(p)) << "," << fmt(mp.y(lam)) << " ";
    os << "\" fill=\"" << fill << "\" fill-opacity=\"0.4\" stroke=\"" << kLineStroke
       << "\" stroke-width=\"1\"" << extra << "/>\n";
    return os.str();
}

}  // namespace

std::string render_diagram_svg(int n, int b, std::optional<std::pair<double, double>> query) {
    const auto g = diagram_geometry(n, b);
    const SvgMap mp{static_cast<double>(n), static_cast<double>(n) + 1.0};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
          "viewBox=\"0 0 640 480\">\n";
    os << "<defs><pattern id=\"hatch\" width=\"8\" height=\"8\" "
          "patternTransform=\"rotate(45)\" patternUnits=\"userSpaceOnUse\">"
          "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#555555\" stroke-width=\"2\"/>"
          "</pattern></defs>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"#ffffff\"/>\n";

    const int last = 2 * b - 1;
    // Case-a triangle B B_{s0} A_{s0}.
    os << poly(mp,
               {{1.0, 0.0},
                {g.b_points.front().first, 0.0},
                {1.0, g.a_points.front().second}},
               kTriangleFill);
    // Quadrilaterals Q_s, s = s0..2b-2.
    for (int s = g.s0; s <= last - 1; ++s) {
        const std::size_t i = s - g.s0;
        os << poly(mp,
                   {g.b_points[i], g.b_points[i + 1], g.a_points[i + 1], g.a_points[i]},
                   kQuadFills[i % 6]);
    }
    // Unbounded Q_{2b-1}, clipped to the drawn window, hatched.
    os << poly(mp,
               {g.b_points.back(),
                {mp.pmax, 0.0},
                {mp.pmax, static_cast<double>(n)},
                {1.0, static_cast<double>(n)},
                g.a_points.back()},
               "url(#hatch)");

    // Axes and labels.
    os << "<line x1=\"" << fmt(mp.x(1.0)) << "\" y1=\"" << fmt(mp.y(0.0)) << "\" x2=\""
       << fmt(mp.x(mp.pmax)) << "\" y2=\"" << fmt(mp.y(0.0)) << "\" stroke=\"" << kLineStroke
       << "\" stroke-width=\"2\"/>\n";
    os << "<line x1=\"" << fmt(mp.x(1.0)) << "\" y1=\"" << fmt(mp.y(0.0)) << "\" x2=\""
       << fmt(mp.x(1.0)) << "\" y2=\"" << fmt(mp.y(static_cast<double>(n))) << "\" stroke=\""
       << kLineStroke << "\" stroke-width=\"2\"/>\n";
    for (int s = g.s0; s <= last; ++s) {
        const std::size_t i = s - g.s0;
        os << "<text x=\"" << fmt(mp.x(g.b_points[i].first)) << "\" y=\""
           << fmt(mp.y(0.0) + 16.0) << "\" font-size=\"12\" text-anchor=\"middle\">B_" << s
           << "</text>\n";
        os << "<text x=\"" << fmt(mp.x(1.0) - 24.0) << "\" y=\""
           << fmt(mp.y(g.a_points[i].second) + 4.0) << "\" font-size=\"12\">A_" << s
           << "</text>\n";
    }

    if (query) {
        const auto [p, lam] = *query;
        const auto c = diagram_point_c(n, p, lam);
        const auto loc = locate_in_diagram(n, b, p, lam);
        os << "<circle cx=\"" << fmt(mp.x(p)) << "\" cy=\"" << fmt(mp.y(lam))
           << "\" r=\"4\" fill=\"" << kQueryColor << "\"/>\n";
        os << "<circle cx=\"" << fmt(mp.x(c.first)) << "\" cy=\"" << fmt(mp.y(c.second))
           << "\" r=\"3\" fill=\"" << kQueryColor << "\"/>\n";
        os << "<line x1=\"" << fmt(mp.x(p)) << "\" y1=\"" << fmt(mp.y(lam)) << "\" x2=\""
           << fmt(mp.x(c.first)) << "\" y2=\"" << fmt(mp.y(c.second)) << "\" stroke=\""
           << kQueryColor << "\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
        if (loc && loc->kind == RegularityCase::Holder) {
            const double a_ord = n - 2 * b + loc->s;
            os << "<line x1=\"" << fmt(mp.x(c.first)) << "\" y1=\"" << fmt(mp.y(c.second))
               << "\" x2=\"" << fmt(mp.x(1.0)) << "\" y2=\"" << fmt(mp.y(a_ord))
               << "\" stroke=\"" << kQueryColor << "\" stroke-width=\"2\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string diagram_csv(int n, int b) {
    const auto g = diagram_geometry(n, b);
    std::ostringstream os;
    os << "kind,s,p,lambda\n";
    os << "B,," << fmt(1.0) << "," << fmt(0.0) << "\n";
    for (int s = g.s0; s <= 2 * b - 1; ++s) {
        const std::size_t i = s - g.s0;
        os << "B_s," << s << "," << fmt(g.b_points[i].first) << ","
           << fmt(g.b_points[i].second) << "\n";
        os << "A_s," << s << "," << fmt(g.a_points[i].first) << ","
           << fmt(g.a_points[i].second) << "\n";
    }
    return os.str();
}

}  // namespace ellab
