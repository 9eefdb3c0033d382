#include "husimi/aperture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include <json.hpp>

#include "husimi/errors.hpp"

namespace husimi {

namespace {
constexpr double kPi = std::numbers::pi;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double ipow_real(double x, int n) {
    double r = 1.0;
    double b = x;
    for (int k = n; k > 0; k >>= 1) {
        if (k & 1) r *= b;
        if (k > 1) b *= b;
    }
    return r;
}

}  // namespace

std::complex<double> cpow_int(std::complex<double> z, int n) {
    std::complex<double> r = 1.0;
    std::complex<double> b = z;
    for (int k = n; k > 0; k >>= 1) {
        if (k & 1) r *= b;
        if (k > 1) b *= b;
    }
    return r;
}

void validate_barrier(const ApodizationBarrier& a) {
    if (a.n < 2 || a.n % 2 != 0) {
        throw input_error("barrier: n must be an even integer >= 2");
    }
    if (!(a.nu > 0.0) || !std::isfinite(a.nu)) {
        throw input_error("barrier: nu must be positive and finite");
    }
    if (!std::isfinite(a.t_op)) throw input_error("barrier: t_op must be finite");
}

void validate_grating(const TimeGrating& g) {
    if (g.slits.empty()) throw input_error("grating: slit list must be nonempty");
    for (const auto& a : g.slits) validate_barrier(a);
    const int n = g.slits.front().n;
    for (std::size_t i = 0; i < g.slits.size(); ++i) {
        if (g.slits[i].n != n) {
            throw input_error("grating: all slits must share the same n");
        }
        if (i > 0 && !(g.slits[i].t_op > g.slits[i - 1].t_op)) {
            throw input_error("grating: opening times must be strictly increasing");
        }
    }
}

bool opens_within_window(const ApodizationBarrier& a, double t) {
    return a.t_op > 0.0 && a.t_op < t;
}

double chi_eval(const ApodizationBarrier& a, double tau) {
    const double u = a.nu * (tau - a.t_op);
    return 1.0 / (1.0 + ipow_real(u, a.n));
}

double chi_eval(const TimeGrating& g, double tau) {
    double sum = 0.0;
    for (const auto& a : g.slits) sum += chi_eval(a, tau);
    return g.weight() * sum;
}

std::complex<double> chi_eval(const ApodizationBarrier& a, std::complex<double> z) {
    const std::complex<double> un = cpow_int(a.nu * (z - a.t_op), a.n);
    const std::complex<double> denom = 1.0 + un;
    // At a pole the two terms cancel; roundoff leaves ~n*eps*|u^n| instead of
    // an exact zero, so treat any cancellation below 1e-12 of the leading
    // magnitude as a pole hit rather than returning pure noise.
    if (std::abs(denom) < 1e-12 * std::max(1.0, std::abs(un))) {
        throw numeric_error("chi_eval: z is a pole of the barrier");
    }
    return 1.0 / denom;
}

std::complex<double> chi_eval(const TimeGrating& g, std::complex<double> z) {
    std::complex<double> sum = 0.0;
    for (const auto& a : g.slits) sum += chi_eval(a, z);
    return g.weight() * sum;
}

std::vector<std::complex<double>> chi_poles_all(const ApodizationBarrier& a) {
    validate_barrier(a);
    std::vector<std::complex<double>> poles;
    poles.reserve(a.n);
    for (int j = 0; j < a.n; ++j) {
        const double theta = (2.0 * j + 1.0) * kPi / a.n;
        poles.push_back(a.t_op + std::polar(1.0 / a.nu, theta));
    }
    return poles;
}

namespace {

void sort_by_re_then_im(std::vector<std::complex<double>>& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

}  // namespace

std::vector<std::complex<double>> chi_poles_upper(const ApodizationBarrier& a) {
    std::vector<std::complex<double>> upper;
    for (const auto& z : chi_poles_all(a)) {
        if (z.imag() > 0.0) upper.push_back(z);
    }
    sort_by_re_then_im(upper);
    return upper;
}

std::vector<std::complex<double>> chi_poles_upper(const TimeGrating& g) {
    validate_grating(g);
    std::vector<std::complex<double>> upper;
    for (const auto& a : g.slits) {
        const auto part = chi_poles_upper(a);
        upper.insert(upper.end(), part.begin(), part.end());
    }
    sort_by_re_then_im(upper);
    return upper;
}

DecayWitness decay_condition_ok(const ApodizationBarrier& a) {
    validate_barrier(a);
    // |z^2 chi_n(z)| ~ R^2 / (nu^n R^n) = R^(1-(n-1)) -> 0 on |z| = R since
    // n >= 2, which is exactly what discarding the large half-circle needs.
    return DecayWitness{true, a.n - 1};
}

TailIntegrals tail_integrals(const ApodizationBarrier& a, double t) {
    validate_barrier(a);
    if (a.n > 2) {
        // For n > 2 the Lorentzian expressions below only bound the tails when
        // the window edges are at least one barrier width away from t_op.
        if (!(a.t_op > 0.0) || a.nu * a.t_op < 1.0) {
            throw input_error("tail_integrals: bound for n > 2 requires nu*t_op >= 1 (got " +
                              format_double(a.nu * a.t_op) + ")");
        }
        if (!(t - a.t_op > 0.0) || a.nu * (t - a.t_op) < 1.0) {
            throw input_error(
                "tail_integrals: bound for n > 2 requires nu*(t - t_op) >= 1 (got " +
                format_double(a.nu * (t - a.t_op)) + ")");
        }
    }
    TailIntegrals ti;
    ti.left = (kPi / 2.0 - std::atan(a.nu * a.t_op)) / a.nu;
    ti.right = (kPi / 2.0 - std::atan(a.nu * (t - a.t_op))) / a.nu;
    ti.exact = (a.n == 2);
    return ti;
}

TailIntegrals tail_integrals(const TimeGrating& g, double t) {
    validate_grating(g);
    TailIntegrals sum;
    sum.exact = true;
    const double w = g.weight();
    for (const auto& a : g.slits) {
        const TailIntegrals ti = tail_integrals(a, t);
        sum.left += w * ti.left;
        sum.right += w * ti.right;
        sum.exact = sum.exact && ti.exact;
    }
    return sum;
}

TimeGrating load_grating(const std::string& config_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(config_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("grating: config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw input_error("grating: config must be a JSON object");

    static const std::set<std::string> known = {"n", "nu_hz", "nu_dimensionless", "t_ops_s"};
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) {
            throw input_error("grating: unknown key '" + item.key() + "'");
        }
    }

    if (!j.contains("n") || !j["n"].is_number_integer()) {
        throw input_error("grating: integer key 'n' is required");
    }
    const int n = j["n"].get<int>();

    const bool has_hz = j.contains("nu_hz");
    const bool has_dimless = j.contains("nu_dimensionless");
    if (has_hz == has_dimless) {
        throw input_error("grating: exactly one of 'nu_hz' or 'nu_dimensionless' is required");
    }
    const auto& nu_node = has_hz ? j["nu_hz"] : j["nu_dimensionless"];
    if (!nu_node.is_number()) throw input_error("grating: nu must be a number");
    const double nu = nu_node.get<double>();

    if (!j.contains("t_ops_s") || !j["t_ops_s"].is_array() || j["t_ops_s"].empty()) {
        throw input_error("grating: nonempty array key 't_ops_s' is required");
    }

    TimeGrating g;
    for (const auto& node : j["t_ops_s"]) {
        if (!node.is_number()) throw input_error("grating: t_ops_s entries must be numbers");
        g.slits.push_back(ApodizationBarrier{n, nu, node.get<double>()});
    }
    validate_grating(g);
    return g;
}

std::string serialize_grating(const TimeGrating& g) {
    validate_grating(g);
    std::string out = "{\n";
    out += "  \"n\": " + std::to_string(g.slits.front().n) + ",\n";
    out += "  \"nu_hz\": " + format_double(g.slits.front().nu) + ",\n";
    out += "  \"t_ops_s\": [";
    for (std::size_t i = 0; i < g.slits.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_double(g.slits[i].t_op);
    }
    out += "]\n}\n";
    return out;
}

}  // namespace husimi
