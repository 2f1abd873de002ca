#include "holo/modes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "holo/text.hpp"

namespace holo {

ComplexField vortex_mode(const GridSpec& grid, int ell, double radius) {
    validate(grid);
    if (!(radius > 0.0))
        throw DomainError("vortex radius must be positive");
    const double half_extent = 0.5 * std::min(grid.nx, grid.ny) * grid.pitch;
    if (radius > half_extent)
        throw DomainError("vortex radius exceeds grid: mode clipped");

    ComplexField f(grid);
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            const double r = std::hypot(x, y);
            if (r > radius)
                continue;
            if (r == 0.0 && ell != 0)
                continue;  // phase singular at the core
            f.at(i, j) = std::polar(1.0, ell * std::atan2(y, x));
        }
    }
    return f;
}

double laguerre(int p, int alpha, double x) {
    if (p == 0)
        return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + alpha - x;
    for (int k = 1; k < p; ++k) {
        const double lp1 = ((2 * k + 1 + alpha - x) * l - (k + alpha) * lm1) / (k + 1);
        lm1 = l;
        l = lp1;
    }
    return l;
}

ComplexField lg_mode(const GridSpec& grid, int p_r, int ell, double waist) {
    validate(grid);
    if (p_r < 0)
        throw DomainError("lg radial index must be >= 0");
    if (!(waist > 0.0))
        throw DomainError("lg waist must be positive");

    const int a = std::abs(ell);
    ComplexField f(grid);
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            const double r = std::hypot(x, y);
            const double u = 2.0 * r * r / (waist * waist);
            // Signed real envelope: the sign flips between consecutive rings.
            const double env = std::pow(std::sqrt(2.0) * r / waist, a) * laguerre(p_r, a, u) *
                               std::exp(-r * r / (waist * waist));
            if (env == 0.0)
                continue;
            f.at(i, j) = env * std::polar(1.0, ell * std::atan2(y, x));
        }
    }
    f = normalize_peak(f);

    // Anti-aliasing guard: the mode should have decayed at the panel border.
    double border = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        border = std::max(border, std::abs(f.at(i, 0)));
        border = std::max(border, std::abs(f.at(i, grid.ny - 1)));
    }
    for (int j = 0; j < grid.ny; ++j) {
        border = std::max(border, std::abs(f.at(0, j)));
        border = std::max(border, std::abs(f.at(grid.nx - 1, j)));
    }
    if (border >= 1e-6)
        std::fprintf(stderr,
                     "warning: lg mode (p_r=%d, ell=%d) reaches the grid edge "
                     "(|value|=%.2e); enlarge the grid or shrink the waist\n",
                     p_r, ell, border);
    return f;
}

ComplexField ang_mode(const GridSpec& grid, int j, int n_ell,
                      const std::variant<VortexSpec, LgSpec>& base) {
    if (n_ell < 0)
        throw DomainError("ang n_ell must be >= 0");
    if (j < 0 || j > 2 * n_ell)
        throw DomainError("ang index j must satisfy 0 <= j <= 2*n_ell");

    const int count = 2 * n_ell + 1;
    ComplexField sum(grid);
    for (int ell = -n_ell; ell <= n_ell; ++ell) {
        ComplexField u = std::holds_alternative<VortexSpec>(base)
                             ? vortex_mode(grid, ell, std::get<VortexSpec>(base).radius)
                             : lg_mode(grid, std::get<LgSpec>(base).p_r, ell,
                                       std::get<LgSpec>(base).waist);
        // Superpose unit-energy terms so every OAM component carries equal
        // weight regardless of the base profile's ell-dependent norm.
        const double nrm = field_norm(u);
        const Complex phase = std::polar(1.0 / (nrm * std::sqrt(double(count))),
                                         -2.0 * M_PI * j * ell / count);
        for (std::size_t k = 0; k < sum.values.size(); ++k)
            sum.values[k] += phase * u.values[k];
    }
    return normalize_peak(sum);
}

ComplexField make_mode(const GridSpec& grid, const ModeSpec& spec) {
    return std::visit(
        [&](const auto& s) -> ComplexField {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, VortexSpec>)
                return vortex_mode(grid, s.ell, s.radius);
            else if constexpr (std::is_same_v<T, LgSpec>)
                return lg_mode(grid, s.p_r, s.ell, s.waist);
            else
                return ang_mode(grid, s.j, s.n_ell, s.base);
        },
        spec);
}

namespace {

std::string signed_int(int v) {
    return (v < 0 ? std::to_string(v) : "+" + std::to_string(v));
}

std::map<std::string, std::string> parse_kv(const std::vector<std::string>& parts) {
    std::map<std::string, std::string> kv;
    for (const std::string& part : parts) {
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos)
            throw DomainError("mode descriptor: expected key=value, got '" + part + "'");
        kv[part.substr(0, eq)] = part.substr(eq + 1);
    }
    return kv;
}

std::string require(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw DomainError("mode descriptor: missing '" + key + "'");
    return it->second;
}

}  // namespace

std::string mode_label(const ModeSpec& spec) {
    if (const auto* v = std::get_if<VortexSpec>(&spec))
        return "vortex_ell" + signed_int(v->ell);
    if (const auto* l = std::get_if<LgSpec>(&spec))
        return "lg_p" + std::to_string(l->p_r) + "_ell" + signed_int(l->ell);
    const auto& a = std::get<AngSpec>(spec);
    return "ang_j" + std::to_string(a.j) + "_n" + std::to_string(a.n_ell);
}

std::string format_mode(const ModeSpec& spec) {
    if (const auto* v = std::get_if<VortexSpec>(&spec))
        return "vortex:ell=" + std::to_string(v->ell) + ",radius=" + format_double(v->radius);
    if (const auto* l = std::get_if<LgSpec>(&spec))
        return "lg:p=" + std::to_string(l->p_r) + ",ell=" + std::to_string(l->ell) +
               ",waist=" + format_double(l->waist);
    const auto& a = std::get<AngSpec>(spec);
    std::string base;
    if (const auto* v = std::get_if<VortexSpec>(&a.base))
        base = "base=vortex,radius=" + format_double(v->radius);
    else {
        const auto& l = std::get<LgSpec>(a.base);
        base = "base=lg,p=" + std::to_string(l.p_r) + ",waist=" + format_double(l.waist);
    }
    return "ang:j=" + std::to_string(a.j) + ",n=" + std::to_string(a.n_ell) + "," + base;
}

ModeSpec parse_mode(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw DomainError("mode descriptor: expected 'kind:key=value,...', got '" + text + "'");
    const std::string kind = text.substr(0, colon);
    const auto kv = parse_kv(split(text.substr(colon + 1), ','));

    if (kind == "vortex")
        return VortexSpec{parse_int(require(kv, "ell")), parse_double(require(kv, "radius"))};
    if (kind == "lg")
        return LgSpec{parse_int(require(kv, "p")), parse_int(require(kv, "ell")),
                      parse_double(require(kv, "waist"))};
    if (kind == "ang") {
        AngSpec a;
        a.j = parse_int(require(kv, "j"));
        a.n_ell = parse_int(require(kv, "n"));
        const std::string base = require(kv, "base");
        if (base == "vortex")
            a.base = VortexSpec{0, parse_double(require(kv, "radius"))};
        else if (base == "lg")
            a.base = LgSpec{parse_int(require(kv, "p")), 0, parse_double(require(kv, "waist"))};
        else
            throw DomainError("mode descriptor: unknown ang base '" + base + "'");
        return a;
    }
    throw DomainError("mode descriptor: unknown kind '" + kind + "'");
}

bool operator==(const ModeSpec& a, const ModeSpec& b) {
    if (a.index() != b.index())
        return false;
    if (const auto* v = std::get_if<VortexSpec>(&a)) {
        const auto& w = std::get<VortexSpec>(b);
        return v->ell == w.ell && v->radius == w.radius;
    }
    if (const auto* l = std::get_if<LgSpec>(&a)) {
        const auto& m = std::get<LgSpec>(b);
        return l->p_r == m.p_r && l->ell == m.ell && l->waist == m.waist;
    }
    const auto& x = std::get<AngSpec>(a);
    const auto& y = std::get<AngSpec>(b);
    if (x.j != y.j || x.n_ell != y.n_ell || x.base.index() != y.base.index())
        return false;
    if (const auto* v = std::get_if<VortexSpec>(&x.base))
        return v->radius == std::get<VortexSpec>(y.base).radius;
    const auto& l = std::get<LgSpec>(x.base);
    const auto& m = std::get<LgSpec>(y.base);
    return l.p_r == m.p_r && l.waist == m.waist;
}

}  // namespace holo
