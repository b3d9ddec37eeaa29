#pragma once

#include <vector>

#include "sgsolve/numeric.hpp"
#include "sgsolve/polynomial.hpp"

namespace sgsolve {

// Precision demanded by the Kannan-Lenstra-Lovasz reconstruction for an
// algebraic number of degree <= d and height <= H:
//   s = ceil(d^2/2 + (3d+4) log2(d+1) + 2d log2 H),
// computed with certified upper bounds on the logarithms.
long kll_precision(long d, const Int& H);

struct ReconstructionRequest {
  Dyadic approx;
  long degree_bound_d = 1;
  Int height_bound_H = 1;
  long precision_s = 0;  // must be >= kll_precision(d, H)
};

class reconstruction_error : public std::runtime_error {
 public:
  reconstruction_error(const std::string& msg, IntPoly best)
      : std::runtime_error(msg), best_candidate(std::move(best)) {}
  IntPoly best_candidate;
};

// Minimal polynomial of the algebraic number approximated by req.approx,
// assuming |approx - alpha| <= 2^-s/(12 d). Primitive, square-free, positive
// leading coefficient. The degree is searched incrementally from 1 so the
// returned polynomial is minimal; every candidate is verified by a Sturm
// count against the certified interval before being accepted.
IntPoly reconstruct_min_poly(const ReconstructionRequest& req);

// delta-LLL reduction of an independent integer basis (rows), exact integer
// arithmetic throughout. 1/4 < delta < 1.
std::vector<std::vector<Int>> lattice_reduce(std::vector<std::vector<Int>> basis,
                                             const Rat& delta = Rat(3, 4));

}  // namespace sgsolve
