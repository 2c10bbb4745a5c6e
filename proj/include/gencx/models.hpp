#pragma once

#include <string>
#include <vector>

#include "gencx/exterior.hpp"

namespace gencx::models {

/// Real torus T^2 with angle coordinates t1, t2 and coframe dt1, dt2.
inline ModelPtr flat_torus() {
  ModelBuilder b(VariableTable({}, {}, {"t1", "t2"}), "flat T2");
  b.add_exact("dt1", "t1");
  b.add_exact("dt2", "t2");
  return b.build();
}

/// Real plane with polynomial coordinates x, y.
inline ModelPtr real_plane() {
  ModelBuilder b(VariableTable({}, {"x", "y"}, {}), "real plane");
  b.add_exact("dx", "x");
  b.add_exact("dy", "y");
  return b.build();
}

/// Invariant real torus of dimension 2k with closed coframe e1..e_{2k}.
inline ModelPtr invariant_real_torus(int dim = 2) {
  ModelBuilder b(VariableTable{}, "invariant T" + std::to_string(dim));
  for (int k = 1; k <= dim; ++k) b.add_generator("e" + std::to_string(k), Grade::R);
  return b.build();
}

/// Invariant complex torus of complex dimension n: closed coframe dz_a (H) and dzb_a (A).
inline ModelPtr complex_torus(int n) {
  ModelBuilder b(VariableTable{}, "complex torus T" + std::to_string(2 * n) + "_C");
  auto hol = [n](int a) { return n == 1 ? std::string("dz") : "dz" + std::to_string(a); };
  auto anti = [n](int a) { return n == 1 ? std::string("dzb") : "dzb" + std::to_string(a); };
  for (int a = 1; a <= n; ++a) b.add_generator(hol(a), Grade::H);
  for (int a = 1; a <= n; ++a) b.add_generator(anti(a), Grade::A);
  for (int a = 1; a <= n; ++a) b.set_conjugate(hol(a), anti(a));
  return b.build();
}

/// Kodaira-Thurston nilmanifold in a real coframe: de4 = e1^e2.
inline ModelPtr kodaira_thurston() {
  ModelBuilder b(VariableTable{}, "Kodaira-Thurston");
  for (int k = 1; k <= 4; ++k) b.add_generator("e" + std::to_string(k), Grade::R);
  b.set_diff("e4", b.gen("e1") ^ b.gen("e2"));
  return b.build();
}

/// Complex chart C^n with coordinates z (n = 1) or z1..zn and coframe dz, dzb.
inline ModelPtr complex_chart(int n) {
  std::vector<std::string> names;
  for (int a = 1; a <= n; ++a) names.push_back(n == 1 ? std::string("z") : "z" + std::to_string(a));
  VariableTable vars(names, {}, {});
  ModelBuilder b(vars, "chart C" + std::to_string(n));
  for (const auto& z : names) b.add_exact("d" + z, z);
  for (const auto& z : names) b.add_exact("d" + VariableTable::conjugate_name(z), VariableTable::conjugate_name(z));
  return b.build();
}

/// Product chart C^n x T^{2l}: coordinates z.., angles t1..t_{2l}, coframe dz.., dzb.., dt...
inline ModelPtr product_chart(int n, int l) {
  std::vector<std::string> names, angles;
  for (int a = 1; a <= n; ++a) names.push_back(n == 1 ? std::string("z") : "z" + std::to_string(a));
  for (int j = 1; j <= 2 * l; ++j) angles.push_back("t" + std::to_string(j));
  ModelBuilder b(VariableTable(names, {}, angles), "chart C" + std::to_string(n) + " x T" + std::to_string(2 * l));
  for (const auto& z : names) b.add_exact("d" + z, z);
  for (const auto& z : names) b.add_exact("d" + VariableTable::conjugate_name(z), VariableTable::conjugate_name(z));
  for (const auto& t : angles) b.add_exact("d" + t, t);
  return b.build();
}

/// The six models used for the randomized algebra identities.
inline std::vector<ModelPtr> algebra_corpus() {
  return {flat_torus(), complex_torus(1), complex_torus(2), kodaira_thurston(), complex_chart(1), complex_chart(2)};
}

}  // namespace gencx::models
