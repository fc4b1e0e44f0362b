#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "qtoric/errors.hpp"

namespace qtoric {

// Quaternion q = x1 + x2*i + x3*j + x4*k with Hamilton's relations
// i^2 = j^2 = k^2 = -1 and i*j = k.
struct Quaternion {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
    double x4 = 0.0;

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3, a.x4 + b.x4};
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3, a.x4 - b.x4};
    }
    friend Quaternion operator*(double s, const Quaternion& a) {
        return {s * a.x1, s * a.x2, s * a.x3, s * a.x4};
    }
    friend Quaternion operator*(const Quaternion& a, double s) { return s * a; }
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b);
};

Quaternion conjugate(const Quaternion& q);
double norm_sq(const Quaternion& q);
double norm(const Quaternion& q);
// Multiplicative inverse; throws ZeroInverse on (numerically) zero input.
Quaternion inverse(const Quaternion& q);

using QuaternionVector = std::vector<Quaternion>;

// H^d <-> R^{4d} identification: coordinate l occupies the flat slots
// [4l, 4l+4) in the order (x1, x2, x3, x4).
std::vector<double> flatten(const QuaternionVector& q);
QuaternionVector unflatten(const std::vector<double>& flat);

// The three generators of the unit-quaternion Lie algebra sp(1) = Im(H).
enum class Sp1Generator { H, X, Y };  // i, j, k respectively
Quaternion generator_unit(Sp1Generator beta);

// Which side a circle/Sp(1) factor multiplies a coordinate on.
enum class Side { Left, Right };

// Fundamental vector field of the one-parameter group generated by `beta`
// acting on coordinate `factor` of q in H^d:
//   left action  q_l -> exp(t beta) q_l  has field  beta * q_l,
//   right action q_l -> q_l exp(-t beta) has field  -(q_l * beta).
// All other flat slots are zero.  Result has length 4d.
std::vector<double> fundamental_field(const QuaternionVector& q, std::size_t factor,
                                      Sp1Generator beta, Side side);

// The parallel 4-form on R^{4d} = H^d evaluated on four vectors: the sum over
// coordinate blocks of the 4x4 determinant det[u|v|w|z] restricted to that
// block.  All arguments must share the same length, a positive multiple of 4.
double psi0(const std::vector<double>& u, const std::vector<double>& v,
            const std::vector<double>& w, const std::vector<double>& z);

// Contraction of the 4-form with three fixed vectors: the covector
//   r_t = psi0(u, v, w, e_t),  t = 0..4d-1,
// i.e. the remaining slot of psi0 ranges over the probe basis.
std::vector<double> contract3(const std::vector<double>& u, const std::vector<double>& v,
                              const std::vector<double>& w);

// Tri-moment map on H^d with offsets C: component l is -1/4 |q_l|^4 + C_l.
std::vector<double> tri_moment(const QuaternionVector& q, const std::vector<double>& C);

// Differential identity check for one coordinate: the contraction of the
// 4-form with the three left-action fields of coordinate `ell` must equal the
// differential of the tri-moment component ell,
//   psi0(H^_ell, X^_ell, Y^_ell, .) = d(-1/4 |q_ell|^4).
// The differential is approximated by central differences with step `h` over
// every flat basis direction; returns the max absolute discrepancy.
double check_dsigma_contraction(const QuaternionVector& q, std::size_t ell, double h);

// A triple of vectors in R^4 used to probe horizontality at a point of S^3_c.
struct ProbeTriple {
    std::array<std::array<double, 4>, 3> t{};
};

// Deterministically generates `count` triples of unit vectors tangent to the
// sphere through q (Gaussian directions projected onto the tangent space).
std::vector<ProbeTriple> tangent_probe_triples(const Quaternion& q, std::size_t count,
                                               std::uint64_t seed);

struct HorizontalityReport {
    double max_residual = 0.0;        // max |psi0(beta^, t1, t2, t3)| over valid probes
    std::size_t valid_probes = 0;     // probes whose three vectors are tangent within tol
    std::size_t invalid_probes = 0;   // probes with at least one non-tangent vector
    double max_invalid_value = 0.0;   // max |psi0| observed on invalid probes
};

// On the sphere |q|^2 = c, the field of a left generator is tangent, so the
// 4-form contracted with it and any three tangent vectors vanishes identically
// (four tangent vectors in R^4 are dependent).  Probes that fail the tangency
// test (|<t, q>| > tol) are flagged rather than silently used.
// Throws NotOnSphere when |q|^2 differs from c beyond tol.
HorizontalityReport horizontality_residual(double c, const Quaternion& q, Sp1Generator beta,
                                           const std::vector<ProbeTriple>& probes,
                                           double tol = 1e-9);

// A vector field on R^n given as a callable.
using VectorField = std::function<std::vector<double>(const std::vector<double>&)>;

// Central-difference Lie bracket [V, W](p) = DW(p)[V(p)] - DV(p)[W(p)], each
// directional derivative approximated as (F(p + h u) - F(p - h u)) / (2h).
std::vector<double> bracket_fd(const VectorField& V, const VectorField& W,
                               const std::vector<double>& p, double h);

// The field of generator beta acting on coordinate `factor` of H^d, as a
// callable on flat vectors (for bracket experiments away from a fixed point).
VectorField sp1_field(std::size_t d, std::size_t factor, Sp1Generator beta, Side side);

// Euclidean gradient of the tri-moment component ell on H^d (offsets drop):
// grad sigma_ell = -|q_ell|^2 * q_ell on block ell, zero elsewhere.
VectorField grad_sigma_field(std::size_t d, std::size_t ell);

// Scalar cut function F(h, q) = h - 1/4 |q|^4 pairing a moment value with one
// extra quaternionic coordinate.
double cut_function(double h_value, const Quaternion& q);

}  // namespace qtoric
