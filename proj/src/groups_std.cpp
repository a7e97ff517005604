#include "toric/groups_std.hpp"

#include <stdexcept>

namespace toric {

namespace {

QMat half_matrix(std::initializer_list<std::initializer_list<long>> lst) {
  IMat m(lst);
  QMat q(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) q.at(r, c) = Rat(m.at(r, c), Int(2));
  return q;
}

// Transpositions and cycles acting on the quotient basis e1,e2,e3 where the
// fourth vector is -e1-e2-e3 (the weight-lattice presentation).
const IMat kT12{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
const IMat kT23{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
const IMat kT34{{1, 0, -1}, {0, 1, -1}, {0, 0, -1}};
const IMat kC123{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
const IMat kD1234{{0, 1, -1}, {1, 0, -1}, {0, 0, -1}};  // the double transposition (12)(34)

IMat neg(const IMat& m) { return -m; }

}  // namespace

EmbeddedLattice lattice_m2() { return EmbeddedLattice::standard("M2", 3); }
EmbeddedLattice lattice_n2() { return EmbeddedLattice::standard("N2", 3); }

EmbeddedLattice lattice_m1() {
  // Columns (1/2)(1,1,-1), (1/2)(1,-1,1), (1/2)(-1,1,1): Z^3 + (1/2,1/2,1/2).
  return EmbeddedLattice("M1", half_matrix({{1, 1, -1}, {1, -1, 1}, {-1, 1, 1}}));
}

EmbeddedLattice lattice_n1() {
  QMat b(3, 3);
  IMat m{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  b = QMat::from_int(m);
  return EmbeddedLattice("N1", b);  // even-coordinate-sum sublattice of Z^3
}

EmbeddedLattice lattice_m3() {
  IMat m{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  return EmbeddedLattice("M3", QMat::from_int(m));
}

EmbeddedLattice lattice_n3() {
  return EmbeddedLattice("N3", half_matrix({{1, 1, -1}, {1, -1, 1}, {-1, 1, 1}}));
}

FiniteMatrixGroup group_w1() {
  return closure(lattice_m1(), {kT12, kT23, kT34, neg(IMat::identity(3))});
}

FiniteMatrixGroup group_w2() {
  IMat tau1{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  IMat tau2{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
  IMat tau3{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  return closure(lattice_m2(), {kT12, kT23, tau1, tau2, tau3});
}

FiniteMatrixGroup group_w3() {
  // Contragredient of the W1 generators on the dual basis.
  IMat t34d = kT34.transpose();
  return closure(lattice_m3(), {kT12, kT23, t34d, neg(IMat::identity(3))});
}

FiniteMatrixGroup group_w1a() { return closure(lattice_m1(), {kC123, kD1234}); }

FiniteMatrixGroup group_w2a() {
  IMat b{{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  return closure(lattice_m2(), {kC123, b});
}

FiniteMatrixGroup group_w3a() { return closure(lattice_m3(), {kC123, kD1234.transpose()}); }

FiniteMatrixGroup group_w1s_type1() { return closure(lattice_m1(), {kC123, kD1234, kT12}); }
FiniteMatrixGroup group_w2s_type1() {
  IMat b{{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  return closure(lattice_m2(), {kC123, b, kT12});
}
FiniteMatrixGroup group_w3s_type1() {
  return closure(lattice_m3(), {kC123, kD1234.transpose(), kT12});
}

FiniteMatrixGroup group_w1s_type2() { return closure(lattice_m1(), {kC123, kD1234, neg(kT12)}); }
FiniteMatrixGroup group_w2s_type2() {
  IMat b{{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  return closure(lattice_m2(), {kC123, b, neg(kT12)});
}
FiniteMatrixGroup group_w3s_type2() {
  return closure(lattice_m3(), {kC123, kD1234.transpose(), neg(kT12)});
}

FiniteMatrixGroup group_w1a_sigma() {
  return closure(lattice_m1(), {kC123, kD1234, neg(IMat::identity(3))});
}
FiniteMatrixGroup group_w2a_sigma() {
  IMat b{{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  return closure(lattice_m2(), {kC123, b, neg(IMat::identity(3))});
}
FiniteMatrixGroup group_w3a_sigma() {
  return closure(lattice_m3(), {kC123, kD1234.transpose(), neg(IMat::identity(3))});
}

FiniteMatrixGroup tahara_w9() {
  IMat a{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  IMat b{{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  return closure(lattice_m2(), {a, b});
}

FiniteMatrixGroup tahara_w10() {
  IMat a{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  IMat b{{0, -1, 1}, {0, -1, 0}, {1, -1, 0}};
  return closure(EmbeddedLattice::standard("Z3", 3), {a, b});
}

FiniteMatrixGroup tahara_w11() {
  IMat a{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  IMat b{{-1, -1, -1}, {0, 0, 1}, {0, 1, 0}};
  return closure(EmbeddedLattice::standard("Z3", 3), {a, b});
}

FiniteMatrixGroup named_group(const std::string& name) {
  if (name == "W1") return group_w1();
  if (name == "W2") return group_w2();
  if (name == "W3") return group_w3();
  if (name == "W1A") return group_w1a();
  if (name == "W2A") return group_w2a();
  if (name == "W3A") return group_w3a();
  if (name == "W1S1") return group_w1s_type1();
  if (name == "W2S1") return group_w2s_type1();
  if (name == "W3S1") return group_w3s_type1();
  if (name == "W1S2") return group_w1s_type2();
  if (name == "W2S2") return group_w2s_type2();
  if (name == "W3S2") return group_w3s_type2();
  if (name == "W1AC2") return group_w1a_sigma();
  if (name == "W2AC2") return group_w2a_sigma();
  if (name == "W3AC2") return group_w3a_sigma();
  if (name == "T9") return tahara_w9();
  if (name == "T10") return tahara_w10();
  if (name == "T11") return tahara_w11();
  throw std::invalid_argument("unknown group name: " + name);
}

std::vector<std::string> named_group_names() {
  return {"W1",  "W2",  "W3",  "W1A",  "W2A",  "W3A",  "W1S1", "W2S1", "W3S1",
          "W1S2", "W2S2", "W3S2", "W1AC2", "W2AC2", "W3AC2", "T9",   "T10",  "T11"};
}

}  // namespace toric
