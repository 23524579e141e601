#pragma once

#include <string>
#include <vector>

namespace qchain {

/// Couplings J_0..J_{N-1} and fields h_0..h_N of a single-excitation chain.
struct SpinChain {
  std::vector<double> J;
  std::vector<double> h;
  /// Free-form provenance, e.g. the family tag it was built from.
  std::string source;

  int N() const { return static_cast<int>(h.size()) - 1; }
};

} // namespace qchain
