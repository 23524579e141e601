#pragma once

// Single-excitation time evolution, exact phases at rational multiples of pi,
// and transfer certification.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qchain/chain.hpp"

namespace qchain {

using Amplitude = std::complex<double>;

/// t = pi_multiple * pi.
struct ExactPhaseTime {
  ExactRational pi_multiple;
  double seconds() const;
};

/// Floating times above this are refused: the phase would carry no digits.
inline constexpr double kMaxFloatingTime = 1e8;

/// f_{r,s}(t) = sum_j U_rj U_sj exp(-i t eps_j).
Amplitude correlation(const SpectralDecomposition& dec, int r, int s, double t);
/// Full matrix [f_{r,s}(t)].
std::vector<std::vector<Amplitude>> correlation_matrix(const SpectralDecomposition& dec, double t);

/// t eps_k / pi reduced into [0, 2); needs exact eigenvalues.
std::vector<ExactRational> phase_residues(const SpectralDecomposition& dec, const ExactPhaseTime& t);

Amplitude correlation_exact_phase(const SpectralDecomposition& dec, int r, int s,
                                  const ExactPhaseTime& t);
Amplitude correlation_exact_phase(const FamilySpec& spec, int r, int s, const ExactPhaseTime& t);
std::vector<std::vector<Amplitude>> correlation_matrix_exact(const SpectralDecomposition& dec,
                                                            const ExactPhaseTime& t);

/// T = Q^N pi for q^{-1} = P/Q odd/odd.
ExactPhaseTime pst_time(const RationalQ& q, int N);

struct ParityRow {
  int k = 0;
  ExactRational value; ///< T eps_k / pi
  bool integer = false;
  bool parity_matches = false; ///< integer with the parity of k
};

struct ParityTable {
  std::vector<ParityRow> rows;
  bool all_pass() const;
};

ParityTable phase_parity_check(const FamilySpec& spec, const ExactPhaseTime& t);

struct Classification {
  ParityClass parity;
  std::string explanation;
};

Classification classify_q(const RationalQ& q);

struct BracketRow {
  int k = 0;
  /// Q^N eps_k with the power of two removed (EvenOverOdd) or cleared
  /// (OddOverEven); Q^N eps_k itself for OddOdd.
  ExactRational bracket;
  bool integer = false;
  bool odd = false;
};

/// Bracket integers for k = 1..kmax with eps_k = q^{-1} + ... + q^{-k} and N = kmax.
std::vector<BracketRow> bracket_parities(const RationalQ& q, int kmax);

/// |f_{r,s}(t)| per grid point, in grid order. Refuses t > kMaxFloatingTime.
std::vector<double> fidelity_scan(const SpectralDecomposition& dec, int r, int s,
                                  const std::vector<double>& grid);

enum class Verdict { Perfect, Imperfect };

inline constexpr double kPerfectTolerance = 1e-10;

struct TransferReport {
  FamilySpec spec;
  Classification classification;
  ExactPhaseTime T;
  ParityTable parity;
  /// |f_{N,0}(T)|
  double endpoint = 0.0;
  /// f_{r,0}(T), r = 0..N
  std::vector<Amplitude> amplitudes;
  /// max |f(2T) - I|
  double period_residual = 0.0;
  /// max |f_{r,s}(T) - delta_{r+s,N}|, computed for the PST spec only.
  std::optional<double> mirror_residual;
  Verdict verdict = Verdict::Imperfect;
  /// Candidate times that were tried, with their parity verdicts.
  std::vector<std::pair<ExactPhaseTime, bool>> candidates;
};

TransferReport transfer_report(const FamilySpec& spec);

} // namespace qchain
