#pragma once

// Representation constructors, combinators, and the commutant machinery that
// decides irreducibility and real/complex/quaternionic type.
//
// Complex representations are realified with the standard complex structure
// (blocks [[0,-1],[1,0]]). A conjugate-linear map c -> A conj(c) is stored as
// its real 2n x 2n matrix.

#include "symcurv/algebra_rep.hpp"
#include "symcurv/liealg.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symcurv {

/// Shared instances so representations built separately compare by pointer.
AlgebraPtr so_algebra(int n);
AlgebraPtr su_algebra(int n);
AlgebraPtr u_algebra(int n);

// --- complex helpers -------------------------------------------------------

Eigen::MatrixXd realify(const Eigen::MatrixXcd& m);
Eigen::MatrixXd realify_antilinear(const Eigen::MatrixXcd& a);
Eigen::MatrixXd standard_complex_structure(int complex_dim);
/// Complex matrices of the images in a unitary basis adapted to the
/// representation's complex structure. Throws InvalidArgument without one.
std::vector<Eigen::MatrixXcd> complex_images(const AlgebraRep& rep);
/// Same change of basis applied to arbitrary J-linear real matrices.
std::vector<Eigen::MatrixXcd> to_complex(const Eigen::MatrixXd& complex_structure,
                                         const std::vector<Eigen::MatrixXd>& mats);
/// Coordinates of a complex matrix in the realization basis of alg (least
/// squares against <A,B> = 1/2 Re tr(A^* B)).
Eigen::VectorXd realization_coords(const LieAlgebraModel& alg, const Eigen::MatrixXcd& m);

/// Realified complex representation. With an antilinear structure map of the
/// given sign, attaches it as structure_map.
AlgebraRep from_complex(AlgebraPtr source, const std::vector<Eigen::MatrixXcd>& images, std::string label,
                        const std::optional<Eigen::MatrixXcd>& antilinear = std::nullopt, int sign = 1);

// --- constructors ----------------------------------------------------------

/// so(2) acting on R^2 with weight k: E01 -> (k/2)(e2 e1^T - e1 e2^T).
AlgebraRep spin2_irrep(int k);
/// su(2) on homogeneous polynomials of degree k in (z1, z2), realified, with
/// X.p = -(dp)(Xz). Orthonormal basis u_r = z1^r z2^(k-r) / sqrt(r!(k-r)!).
/// Structure map (Jc)_s = (-1)^s conj(c_(k-s)), J^2 = (-1)^k.
AlgebraRep su2_irrep(int k);
/// (k+1) x (k+1) complex matrix of X in su(2) on degree-k polynomials.
Eigen::MatrixXcd su2_action(const Eigen::MatrixXcd& x, int k);
Eigen::MatrixXcd su2_antilinear(int k);
/// so(4) = su(2) + su(2) through the chiral spin representations. Real form
/// when k1+k2 is even, realified (quaternionic) otherwise.
AlgebraRep spin4_irrep(int k1, int k2);

/// Gamma matrices: n=2 uses sigma1, sigma2; n -> n+2 by g_i (x) sigma1,
/// Gamma (x) sigma1, 1 (x) sigma2; odd n appends the chirality of n-1.
std::vector<Eigen::MatrixXcd> gamma_matrices(int n);
/// i^(n/2) g_1 ... g_n for even n; diagonal with entries +-1.
Eigen::MatrixXcd chirality(int n);
/// Images of the so(n) basis E_ij: (1/2) g_j g_i.
std::vector<Eigen::MatrixXcd> spin_generators(int n);

struct SpinRep {
  AlgebraRep full;
  std::optional<AlgebraRep> plus;
  std::optional<AlgebraRep> minus;
};
/// 3 <= n <= 8, else UnsupportedDim.
SpinRep spin_fundamental(int n);

AlgebraRep exterior_power(const AlgebraRep& rep, int k);
AlgebraRep sym2_traceless(const AlgebraRep& rep);
/// u(n) on C by X -> k tr X.
AlgebraRep un_det_power(int n, int k);
/// u(n) on C^n by X -> X + k tr(X) I.
AlgebraRep un_fundamental_twist(int n, int k);
/// ad action of alg on its derived algebra [alg, alg], orthonormal for the
/// algebra's inner product.
AlgebraRep adjoint_rep(const AlgebraPtr& alg);

AlgebraRep direct_sum(const AlgebraRep& a, const AlgebraRep& b);
AlgebraRep direct_sum(const std::vector<AlgebraRep>& parts);
AlgebraRep tensor(const AlgebraRep& a, const AlgebraRep& b);
/// Zero action on R^k; carries the standard complex structure when k is even.
AlgebraRep trivial_rep(const AlgebraPtr& source, int k);

/// rep o phi for a homomorphism phi: new_source -> rep.source() given as a
/// matrix (rows: rep.source() coordinates, columns: new_source basis).
AlgebraRep pullback(const AlgebraRep& rep, const AlgebraPtr& new_source, const Eigen::MatrixXd& phi,
                    std::string label);
/// Restriction to an invariant subspace with orthonormal columns q.
AlgebraRep restrict_to(const AlgebraRep& rep, const Eigen::MatrixXd& q, std::string label);
/// Fixed points of a structure map with sign +1.
AlgebraRep real_form(const AlgebraRep& rep);
/// real_form when a +1 structure map is present, else rep.
AlgebraRep irreducible_real(const AlgebraRep& rep);

/// Throws NotHomomorphism when the residual exceeds tol.
void validate_homomorphism(const AlgebraRep& rep, double tol);

// --- commutant and type ----------------------------------------------------

enum class RepKind { Real, Complex, Quaternionic };
std::string_view to_string(RepKind kind);

struct RepType {
  RepKind kind = RepKind::Real;
  /// Real: the invariant inner product. Otherwise an invariant complex
  /// structure (W^2 = -1) from the commutant.
  Eigen::MatrixXd witness;
  int commutant_dim = 0;
};

/// Orthonormal (Frobenius) bases of the symmetric and skew parts of the
/// commutant {C : [rho(X), C] = 0}.
struct Commutant {
  std::vector<Eigen::MatrixXd> symmetric;
  std::vector<Eigen::MatrixXd> skew;
  int dim() const { return static_cast<int>(symmetric.size() + skew.size()); }
};
Commutant commutant(const AlgebraRep& rep);

/// Throws Reducible when the commutant is too large for an irreducible.
RepType classify_type(const AlgebraRep& rep);
bool is_irreducible(const AlgebraRep& rep);
/// Irreducible real summands, found by diagonalizing a random symmetric
/// element of the commutant.
std::vector<AlgebraRep> decompose(const AlgebraRep& rep, std::uint64_t seed = 0x5eed);
/// Dimension of {T : T rho_a = rho_b T}.
int intertwiner_dim(const AlgebraRep& a, const AlgebraRep& b);
bool equivalent(const AlgebraRep& a, const AlgebraRep& b);

}  // namespace symcurv
