#include "mgal/ndcore/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "mgal/error.hpp"

namespace mgal::nd {
namespace {

struct Probe {
  double loss;
  std::vector<std::uint8_t> kinks;
};

Probe evaluate(const LossBuilder& build, const std::vector<Matrix>& params) {
  Tape tape;
  tape.set_record_kinks(true);
  std::vector<Var> vars;
  vars.reserve(params.size());
  for (const auto& p : params) vars.push_back(tape.constant(p));
  Var loss = build(tape, vars);
  const Matrix& v = loss.value();
  if (v.rows() != 1 || v.cols() != 1) throw ContractError("gradient check: loss is not 1x1");
  if (!std::isfinite(v(0, 0))) throw NumericError("gradient check: non-finite loss while probing");
  return {v(0, 0), tape.kink_signature()};
}

}  // namespace

GradCheckReport finite_diff_check(const LossBuilder& build, std::span<const Matrix> params,
                                  const GradCheckOptions& options) {
  if (!(options.step > 0.0)) throw ContractError("gradient check: step must be positive");

  std::vector<Matrix> analytic;
  std::vector<std::uint8_t> base_kinks;
  {
    Tape tape;
    tape.set_record_kinks(true);
    std::vector<Var> vars;
    for (const auto& p : params) vars.push_back(tape.parameter(p));
    Var loss = build(tape, vars);
    if (!std::isfinite(loss.value()(0, 0))) throw NumericError("gradient check: non-finite loss");
    base_kinks = tape.kink_signature();
    tape.backward(loss);
    for (Var v : vars) analytic.push_back(v.grad());
  }

  GradCheckReport report;
  std::vector<Matrix> work(params.begin(), params.end());
  for (std::size_t pi = 0; pi < work.size(); ++pi) {
    auto entries = work[pi].values();
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const double original = entries[e];

      entries[e] = original + options.kink_margin;
      const bool flips_up = evaluate(build, work).kinks != base_kinks;
      entries[e] = original - options.kink_margin;
      const bool flips_down = evaluate(build, work).kinks != base_kinks;
      if (flips_up || flips_down) {
        entries[e] = original;
        ++report.skipped_at_kink;
        continue;
      }

      entries[e] = original + options.step;
      const double up = evaluate(build, work).loss;
      entries[e] = original - options.step;
      const double down = evaluate(build, work).loss;
      entries[e] = original;

      const double fd = (up - down) / (2.0 * options.step);
      const double ad = analytic[pi].values()[e];
      const double denom = std::max({std::abs(ad), std::abs(fd), options.scale_floor});
      const double rel = std::abs(ad - fd) / denom;
      ++report.checked;
      if (rel > report.max_relative_error) {
        report.max_relative_error = rel;
        report.worst_param = pi;
        report.worst_entry = e;
      }
    }
  }
  report.passed = report.max_relative_error < options.tolerance;
  return report;
}

}  // namespace mgal::nd
