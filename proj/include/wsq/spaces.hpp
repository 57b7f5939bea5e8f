#pragma once

#include <string>
#include <variant>
#include <vector>

#include "wsq/sequence.hpp"
#include "wsq/settings.hpp"
#include "wsq/verdict.hpp"
#include "wsq/weight.hpp"

namespace wsq {

// How a single weight is blown up into a space of entire functions:
// one weight, a union/intersection over dilations v(c t), or over powers v^c.
enum class SystemKind {
  single,
  dilatation_inductive,
  dilatation_projective,
  exponential_inductive,
  exponential_projective,
};

const char* system_name(SystemKind k);
bool is_dilatation(SystemKind k);
bool is_exponential(SystemKind k);

// A weighted space of entire functions, described by its seed (a sequence
// generating v_M, or a radial weight) and the system built on top of it.
struct SpaceSpec {
  std::variant<LogSequence, Weight> source;
  SystemKind system = SystemKind::single;
  std::string name;

  bool sequence_source() const { return std::holds_alternative<LogSequence>(source); }
};

// Entire comparison series built from a sequence:
//   dilated:  theta(t) = sum_j (c t)^j / (2^j M_j)
//   powered:  theta(t) = sum_j t^(c j) / (2^j M_j^c), integer c >= 1
struct ThetaFunction {
  LogSequence m;
  bool powered = false;
  double c = 1.0;
};

// log theta(t); terms are accumulated by log-sum-exp and the series is cut
// once a term falls 40 log-units below the running maximum.
double theta_eval(const ThetaFunction& th, double t);

struct ThetaEvalDetail {
  double log_value = 0.0;
  int terms_used = 0;
  double truncation_bound = 0.0;  // dropped tail mass relative to exp(log_value)
};
ThetaEvalDetail theta_eval_detail(const ThetaFunction& th, double t);

// sup over the grid of |p(t)| v(t) in logs, with the polynomial given by the
// log-magnitudes of its coefficients (-inf entries are absent monomials).
double poly_norm(const std::vector<double>& coeff_log_mag, const Weight& v,
                 const std::vector<double>& grid);

// Inclusion of A into B.  Systems must be of the same kind; function sources
// are reduced to their associated sequences where the dispatch table needs
// sequence-level conditions.  The verdict's rule field names the dispatch rule
// applied.
Verdict decide_inclusion(const SpaceSpec& a, const SpaceSpec& b, const Settings& st = {});

// Both inclusions combined.
Verdict decide_equality(const SpaceSpec& a, const SpaceSpec& b, const Settings& st = {});

// Is the space closed under pointwise multiplication?
Verdict decide_mult_closure(const SpaceSpec& a, const Settings& st = {});

}  // namespace wsq
