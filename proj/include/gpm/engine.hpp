#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpm/kernels.hpp"
#include "gpm/measures.hpp"

namespace gpm {

// 0 = convergent, 1 = divergent, -1 = inconclusive at desk scale.
using Bit = int;
Bit bit_of(const SeriesReport& rep);
std::string pattern_string(const std::array<Bit, 3>& p);

// Tail behaviour of a positive sequence, mirroring the case split used by the
// approximation scheme: (a) -> infinity, (b) finite limit with divergent
// residue squares, (c) finite limit with summable residues, (d) -> 0.
enum class LimitClass { ToInfinity, FinitePlusDivergent, FinitePlusSummable, ToZero };
std::string to_string(LimitClass c);

struct LimitProbe {
  LimitClass cls;
  double limit = 0.0;          // tail estimate when finite
  SeriesReport residue_sq;     // sum c_n^2 with x_n = limit (1 + c_n)
};
LimitProbe probe_limit(const std::string& name, long window,
                       const std::function<double(long)>& value);

struct CaseClassification {
  std::array<Bit, 3> s_pattern{};         // (S_1(3), S_2(3), S_3(3))
  std::array<Bit, 3> sigma123_pattern{};  // (Sigma_12, Sigma_23, Sigma_13), min over s-grid
  std::array<std::array<Bit, 3>, 3> y_matrix{};  // ||Y_s^{(r)}||^2 flags
  std::array<Bit, 3> y_pattern{};                // ||Y_r||^2 flags
  std::vector<std::string> branch_path;
  std::map<std::string, SeriesReport> reports;   // every intermediate test
};

// Normalizes the spec, evaluates the S / Sigma_ij(s) / y patterns and walks
// the case tree, recording each test outcome.
CaseClassification classify_case(const MeasureSpec& spec);

enum class Verdict { IrreducibleEvidence, ReducibleWitness, Inconclusive };
std::string to_string(Verdict v);

// One of the eight operator triplets: flag[r] = false -> x_{r}, true -> D_{r}.
struct OperatorTriplet {
  std::array<bool, 3> use_d{};
  std::string label() const;  // e.g. "(x1,D2,x3)"
};

struct ApproxVerdict {
  std::vector<OperatorTriplet> triplets;
  std::map<std::string, SeriesReport> per_criterion;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<GroupElement> witness;
  SeriesReport witness_sigma1, witness_sigma2;  // filled for ReducibleWitness
  std::array<Bit, 3> x_approx{};                // per-row x approximability
  std::array<Bit, 3> d_approx{};                // per-row D approximability
};

// Runs the kernels the classification demands and collects the triplets whose
// members' criteria all classify divergent.
ApproxVerdict approximable_triplets(const MeasureSpec& spec, const CaseClassification& cls,
                                    long m_trunc);

// For each element: |det| != 1 shortcut, otherwise Sigma_1^{sign} + Sigma_2.
std::vector<std::pair<std::string, SeriesReport>> orthogonality_sweep(
    const MeasureSpec& spec, const std::vector<GroupElement>& elements);

// The minimal generating family at fixed parameters: the six elementary
// one-parameter elements, the reflected two-parameter elements, and a scaled
// orthogonal element per reflection index.
std::vector<GroupElement> minimal_sweep_elements(double t, double s, double phi);

struct L2ProbeResult {
  std::vector<double> best_coeffs;
  double best_norm_sq = 0.0;           // ||sum C_r f_r||^2 at the full window
  bool bounded_found = false;          // a combination with bounded partial norms
  bool degenerate = false;             // the span itself is (nearly) dependent
  SeriesReport combo_norm;             // partial norms of the best combination
  SeriesReport growth_ratio;           // Gamma(f0,f1,f2)/Gamma(f1,f2) trajectory
};

// Searches an integer coefficient grid plus the least-squares-optimal
// coefficients for a combination of the given vectors with bounded partial
// norms. Vectors are indexed k = -N..N (slot k+N).
L2ProbeResult l2_combination_probe(const std::vector<std::vector<double>>& vectors,
                                   int coeff_grid_radius = 3);

// Full pipeline report for one spec (classification + verdict + sweep).
struct EngineReport {
  CaseClassification classification;
  ApproxVerdict verdict;
  std::vector<std::pair<std::string, SeriesReport>> sweep;
};
EngineReport run_engine(const MeasureSpec& spec, long m_trunc);

}  // namespace gpm
