#pragma once

#include <memory>
#include <optional>
#include <stdexcept>

#include "mmm/guarantees.hpp"
#include "mmm/oracles.hpp"
#include "mmm/uncertainty.hpp"

namespace mmm {

/// A robust problem: feasible set X (via its oracle), uncertainty set U and an
/// optional guarantee profile.
struct Instance {
  std::shared_ptr<const Oracle> oracle;
  UncertaintySet uncertainty;
  std::optional<GuaranteeProfile> profile;

  std::size_t dimension() const { return oracle ? oracle->dimension() : 0; }

  void validate() const {
    if (!oracle) throw std::invalid_argument("Instance: no oracle");
    require_same_dim(mmm::dimension(uncertainty), oracle->dimension(), "Instance");
  }
};

}  // namespace mmm
