#include "gossip_age/symmetric.hpp"

#include <cmath>

#include "gossip_age/errors.hpp"

namespace gossip_age {

namespace {

void check_rates(std::size_t n, double lambda_self, double lambda) {
  if (n == 0) throw InvalidParameter("n must be >= 1");
  if (!(lambda_self > 0.0) || !std::isfinite(lambda_self)) {
    throw InvalidParameter("lambda_self must be a positive finite rate");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidParameter("lambda must be a positive finite rate");
  }
}

} // namespace

std::string_view to_string(Topology t) {
  switch (t) {
  case Topology::complete:
    return "complete";
  case Topology::ring:
    return "ring";
  }
  return "unknown";
}

std::optional<Topology> parse_topology(std::string_view name) {
  if (name == "complete") return Topology::complete;
  if (name == "ring") return Topology::ring;
  return std::nullopt;
}

double harmonic_number(std::size_t n) {
  double h = 0.0;
  for (std::size_t k = n; k >= 1; --k) h += 1.0 / static_cast<double>(k);
  return h;
}

SymmetricAgeProfile complete_age_profile(std::size_t n, double lambda_self, double lambda) {
  check_rates(n, lambda_self, lambda);
  SymmetricAgeProfile p{Topology::complete, n, lambda_self, lambda, std::vector<double>(n)};
  const double nd = static_cast<double>(n);
  p.ages[n - 1] = lambda_self / lambda;
  // A j-set has n-j outside neighbors, each pushing j*lambda/(n-1) into it.
  for (std::size_t j = n - 1; j >= 1; --j) {
    const double jd = static_cast<double>(j);
    const double peer = jd * (nd - jd) * lambda / (nd - 1.0);
    p.ages[j - 1] = (lambda_self + peer * p.ages[j]) / (jd * lambda / nd + peer);
  }
  return p;
}

AgeBounds complete_bounds(std::size_t n, double lambda_self, double lambda) {
  check_rates(n, lambda_self, lambda);
  const double scale = lambda_self / lambda;
  const double nd = static_cast<double>(n);
  const double lower = scale * ((nd - 1.0) / nd * harmonic_number(n - 1) + 1.0 / nd);
  const double upper = scale * harmonic_number(n);
  return AgeBounds{lower, upper};
}

SymmetricAgeProfile ring_age_profile(std::size_t n, double lambda_self, double lambda) {
  if (n < 3) throw InvalidParameter("ring requires n >= 3");
  check_rates(n, lambda_self, lambda);
  SymmetricAgeProfile p{Topology::ring, n, lambda_self, lambda, std::vector<double>(n)};
  const double nd = static_cast<double>(n);
  p.ages[n - 1] = lambda_self / lambda;
  // Every proper arc receives a total of lambda from the nodes bordering it.
  for (std::size_t j = n - 1; j >= 1; --j) {
    const double jd = static_cast<double>(j);
    p.ages[j - 1] = (lambda_self + lambda * p.ages[j]) / (jd * lambda / nd + lambda);
  }
  return p;
}

} // namespace gossip_age
