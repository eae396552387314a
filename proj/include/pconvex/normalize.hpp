#pragma once

// Moments, isotropic position, box sandwiches, the box estimate on
// projective maps, and the degeneration analysis of representation
// sequences.

#include <optional>
#include <string>
#include <vector>

#include "pconvex/domain.hpp"
#include "pconvex/vinberg.hpp"

namespace pconvex {

struct MomentData {
  Vec centroid;
  Mat second_moment;  // central, divided by the volume
  double volume = 0.0;
};

MomentData moments(const ConvexDomain& domain);

// K^{-1} B ⊂ Omega ⊂ K B for the box B = [-1, 1]^n. The tight values are
// the smallest outer scale and the largest box-vertex gauge; the lemma's
// single constant is K = max(1, outer_tight, inner_tight) and is reported as
// both inner_K and outer_K.
struct BoxSandwich {
  double inner_K = 1.0;
  double outer_K = 1.0;
  double outer_tight = 0.0;
  double inner_tight = 0.0;
  bool certified = false;
};

BoxSandwich box_sandwich(const ConvexDomain& domain);

struct Normalization {
  Vec translation;  // centroid removed first
  Mat rotation;     // columns: eigenvectors of Q, eigenvalues non-increasing
  Vec diagonal;     // D = diag(Q eigenvalues^{-1/2})
  Mat linear;       // z -> linear * (z - translation)
  ConvexDomain domain;
  BoxSandwich sandwich;
};

// Symmetric eigen-decomposition with non-increasing eigenvalues and each
// eigenvector's first nonzero component positive.
void sorted_eigen(const Mat& sym, Vec& values, Mat& vectors);

Normalization isotropic_normalize(const ConvexDomain& domain, bool recenter = true);

struct BoxCheck {
  bool hypothesis_holds = false;
  double hypothesis_margin = 0.0;  // K - max |coordinate| over the image box
  bool conclusion_holds = false;
  Mat margins;  // 2K |A_nn| - |A_ij|
  double min_margin = 0.0;
};

// Tests [A](B) ⊂ K B on the box vertices and sampled edges, and the entry
// bound |A_ij| <= 2K |A_{n+1,n+1}| (A in the standard chart basis).
BoxCheck box_bound_check(const Mat& a, double k);

struct RepSequence {
  std::vector<std::string> generators;
  std::vector<std::vector<Mat>> terms;
  std::vector<ConvexDomain> domains;
  // Alternative: Omega_k = conjugators[k] (base_domain).
  std::optional<ConvexDomain> base_domain;
  std::vector<Mat> conjugators;

  ConvexDomain domain_at(size_t k) const;
};

struct SubspaceWitness {
  bool found = false;
  Mat basis;       // orthonormal columns
  bool dual = false;  // found for the transposed family (annihilator reported)
  std::string word;
  int search_bound = 0;
};

SubspaceWitness invariant_subspace_search(const std::vector<Mat>& gens, double tol = 1e-8, int max_length = 4);

struct DegenerationStep {
  int k = 0;
  Vec center;
  Vec diagonal;          // D_k (chart part; the last entry is 1)
  double norm_d = 0.0;   // max diagonal entry of D_k
  double max_entry_b = 0.0;
  double max_entry_raw = 0.0;
  double corner_residual = 0.0;
  double cauchy_residual = 0.0;  // vs the previous step (0 at k = first)
  double domain_residual = 0.0;  // support-function change vs previous step
  std::vector<Mat> rotated;      // A(k, g)
  std::vector<Mat> conjugated;   // B(k, g)
  std::optional<ConvexDomain> normalized;
};

struct DegenerationReport {
  std::vector<DegenerationStep> steps;
  double slope_log_d = 0.0;
  double slope_log_raw = 0.0;
  bool d_bounded = true;
  bool raw_blowup = false;
  bool b_bounded = true;
  bool convergent = false;
  // Dimensions k with span(e_1..e_k) invariant under every limit B.
  std::vector<int> invariant_flags;
  SubspaceWitness limit_witness;
  std::string verdict;

  std::string to_json() const;
  std::string to_csv() const;
};

struct SequenceOptions {
  double slope_threshold = 1e-2;
  double convergence_tol = 1e-6;
  double pattern_tol = 1e-6;
  VinbergOptions vinberg;
};

DegenerationReport analyze_sequence(const RepSequence& seq, const SequenceOptions& options = {});

// Least-squares slope of y against x.
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace pconvex
