#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "ezdkit/algebra.hpp"
#include "ezdkit/parse.hpp"

namespace ezdkit::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline AlgebraPtr load_fixture(const std::string& name) {
  return GradedAlgebra::build(parse_presentation(read_file(std::string(EZDKIT_FIXTURES) + "/" + name)));
}

// Conca's four-variable ring over a chosen prime field, defined inline so
// unit tests do not depend on fixture files.
inline AlgebraPtr noconca_ring(const std::string& field = "GF(5)") {
  return GradedAlgebra::build(parse_presentation(
      "field = " + field + "\n"
      "vars = s t u v\n"
      "relations = s^2, s*v, t^2, t*v, u^2, u*v, v^2 - s*t - s*u\n"));
}

// Quadratic algebra with a Conca generator x1: relations x1^2 and all
// x_i x_j for 2 <= i <= j <= e.
inline AlgebraPtr conca_example(int e, const std::string& field = "GF(5)") {
  std::ostringstream src;
  src << "field = " << field << "\nvars =";
  for (int i = 1; i <= e; ++i) src << " x" << i;
  src << "\nrelations = x1^2";
  for (int i = 2; i <= e; ++i)
    for (int j = i; j <= e; ++j) src << ", x" << i << "*x" << j;
  src << "\n";
  return GradedAlgebra::build(parse_presentation(src.str()));
}

} // namespace ezdkit::testing
