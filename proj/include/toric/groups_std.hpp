#pragma once

#include "toric/group.hpp"

namespace toric {

/// The three rank-3 character lattices and their duals, in one shared
/// reference coordinate system: M2 = Z^3 with the signed-permutation action;
/// M3 = even-coordinate-sum sublattice of M2 (index 2); M1 = Z^3 + (1/2,1/2,1/2)
/// (index 2 over M2). Dually N1 = even-sum < N2 = Z^3 < N3 = Z^3 + (1/2,1/2,1/2).
EmbeddedLattice lattice_m1();
EmbeddedLattice lattice_m2();
EmbeddedLattice lattice_m3();
EmbeddedLattice lattice_n1();
EmbeddedLattice lattice_n2();
EmbeddedLattice lattice_n3();

/// W1, W2, W3: the three maximal irreducible finite subgroups of GL_3(Z),
/// each isomorphic to S4 x C2, realized on M1, M2, M3 respectively.
FiniteMatrixGroup group_w1();
FiniteMatrixGroup group_w2();
FiniteMatrixGroup group_w3();

/// The unique A4 subgroup of each Wi.
FiniteMatrixGroup group_w1a();
FiniteMatrixGroup group_w2a();
FiniteMatrixGroup group_w3a();

/// The two S4 subgroups of each Wi: type I is the plain S4 (not inside
/// SL_3(Z)); type II is Wi intersected with SL_3(Z).
FiniteMatrixGroup group_w1s_type1();
FiniteMatrixGroup group_w2s_type1();
FiniteMatrixGroup group_w3s_type1();
FiniteMatrixGroup group_w1s_type2();
FiniteMatrixGroup group_w2s_type2();
FiniteMatrixGroup group_w3s_type2();

/// A4 extended by the central involution -I (A4 x C2).
FiniteMatrixGroup group_w1a_sigma();
FiniteMatrixGroup group_w2a_sigma();
FiniteMatrixGroup group_w3a_sigma();

/// Tahara's generator pairs for the three A4 classes W9, W10, W11 in
/// SL_3(Z), on the standard lattice Z^3.
FiniteMatrixGroup tahara_w9();
FiniteMatrixGroup tahara_w10();
FiniteMatrixGroup tahara_w11();

/// Look up any of the above by CLI name (W1, W2A, W3S2, W1S1, T9, ...).
/// Throws on unknown names.
FiniteMatrixGroup named_group(const std::string& name);
std::vector<std::string> named_group_names();

}  // namespace toric
