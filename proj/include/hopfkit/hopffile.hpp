// Reading and writing Hopf algebras as `.hopf` JSON documents.
//
// Document keys:
//   field      {"kind":"Rational"} | {"kind":"Prime","p":5}
//              | {"kind":"Cyclotomic","N":4}
//   dim        basis size n
//   basis      n distinct labels
//   unit       n scalar strings (coefficients of the unit element)
//   mult       sparse entries [i, j, k, "coeff"]: b_i b_j = sum coeff * b_k
//   coproduct  sparse entries [i, j, k, "coeff"]: Delta(b_i) = sum coeff * b_j (x) b_k
//   counit     n scalar strings
//   antipode   sparse entries [i, j, "coeff"]: S(b_j) = sum_i coeff * b_i
//   pivot      optional element expression string
//
// Scalars use the exact-kernel scalar grammar; malformed documents raise
// HopfFileError (or ParseError for bad coefficients).

#pragma once

#include <iosfwd>
#include <string>

#include "hopfkit/hopf.hpp"

namespace hopfkit {

struct HopfFileError : HopfError {
  using HopfError::HopfError;
};

HopfAlgebra read_hopf(std::istream& in);
HopfAlgebra read_hopf_file(const std::string& path);

// Deterministic serialization: entries sorted by index, canonical scalar
// printing; write(parse(file)) reproduces the same structure tensors.
std::string write_hopf(const HopfAlgebra& H);
void write_hopf_file(const HopfAlgebra& H, const std::string& path);

}  // namespace hopfkit
