#pragma once

#include <string>
#include <variant>

#include "holo/field.hpp"

namespace holo {

// Top-hat vortex: e^{i ell phi} inside a disk of the given radius, zero
// outside. The phase is singular at the core, so for ell != 0 the center
// sample carries zero amplitude.
struct VortexSpec {
    int ell = 0;
    double radius = 0.0;  // meters
};

// Laguerre-Gaussian mode at the waist plane, radial index p_r, azimuthal
// index ell. p_r is named to avoid a clash with the pulse position p.
struct LgSpec {
    int p_r = 0;
    int ell = 0;
    double waist = 0.0;  // meters
};

// Angular (ANG) mode: equal-weight discrete-Fourier superposition of the
// 2*n_ell+1 OAM modes ell in [-n_ell, n_ell] built from the base profile,
// with phases e^{-i 2 pi j ell / (2 n_ell + 1)}. The base's own ell is
// ignored; its radial parameters (radius, or p_r and waist) are shared by
// every term.
struct AngSpec {
    int j = 0;
    int n_ell = 1;
    std::variant<VortexSpec, LgSpec> base;
};

using ModeSpec = std::variant<VortexSpec, LgSpec, AngSpec>;

ComplexField vortex_mode(const GridSpec& grid, int ell, double radius);
ComplexField lg_mode(const GridSpec& grid, int p_r, int ell, double waist);
ComplexField ang_mode(const GridSpec& grid, int j, int n_ell,
                      const std::variant<VortexSpec, LgSpec>& base);

// Dispatches on the spec variant. All builders return peak-normalized fields.
ComplexField make_mode(const GridSpec& grid, const ModeSpec& spec);

// Generalized Laguerre polynomial L_p^alpha(x) by the three-term recurrence.
double laguerre(int p, int alpha, double x);

// Short filesystem/CSV-safe label, e.g. "vortex_ell+2", "lg_p1_ell-2",
// "ang_j1_n2".
std::string mode_label(const ModeSpec& spec);

// Compact one-line descriptor used in config files, e.g.
//   vortex:ell=2,radius=0.001
//   lg:p=1,ell=-2,waist=0.0005
//   ang:j=1,n=2,base=vortex,radius=0.001
std::string format_mode(const ModeSpec& spec);
ModeSpec parse_mode(const std::string& text);

bool operator==(const ModeSpec& a, const ModeSpec& b);

}  // namespace holo
