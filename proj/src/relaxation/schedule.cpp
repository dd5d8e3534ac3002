#include <cmath>
#include <numbers>

#include "tlc/errors.hpp"
#include "tlc/relaxation.hpp"

namespace tlc::relaxation {

namespace {

void validate_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "relaxation weights must be finite and nonzero");
  }
}

}  // namespace

RelaxationSchedule theorem_schedule(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidM, "theorem schedules need m >= 1");
  RelaxationSchedule s;
  s.m = m;
  s.source = ScheduleSource::theorem;
  const double denom = 2.0 * static_cast<double>(m) + 1.0;
  for (std::size_t j = 1; j <= m; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / denom;
    s.alphas.push_back(1.0 / (1.0 - std::cos(theta)));
  }
  return s;
}

RelaxationSchedule constant_schedule(std::size_t m, double alpha) {
  validate_alpha(alpha);
  RelaxationSchedule s;
  s.m = m;
  s.alphas.assign(m, alpha);
  s.source = ScheduleSource::constant;
  s.constant_alpha = alpha;
  return s;
}

RelaxationSchedule explicit_schedule(std::vector<double> alphas) {
  for (double a : alphas) validate_alpha(a);
  RelaxationSchedule s;
  s.m = alphas.size();
  s.alphas = std::move(alphas);
  s.source = ScheduleSource::explicit_list;
  return s;
}

double clustered_error(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidM, "clustered values need m >= 1");
  const double k = 2.0 * static_cast<double>(m) + 1.0;
  return 1.0 / (k * k);
}

double clustered_eigenvalue(std::size_t m) { return 1.0 - clustered_error(m); }

}  // namespace tlc::relaxation
