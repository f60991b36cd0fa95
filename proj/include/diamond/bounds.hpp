#pragma once

#include <array>
#include <string>
#include <vector>

#include "diamond/channel.hpp"

namespace diamond {

enum class BoundId { up1, up2, up3, up4, capacity_delta0 };

std::string to_string(BoundId id);

/// Which relay-to-destination capacity is raised by delta so that C123 <= C13 + C23
/// holds for the instance the dual vector is computed on.
enum class EnlargedLink { none, c13, c23 };

struct UpperBound {
    double value = 0.0;
    BoundId id = BoundId::up1;
    std::array<double, 4> tau{};  // dual vector, computed on the enlarged capacities
    double delta_added = 0.0;
    EnlargedLink enlarged = EnlargedLink::none;
};

/// Capacity when Delta = 0. Throws std::domain_error when Delta is not tolerance-zero.
UpperBound capacity_delta0(const LinkCapacities& caps);

/// The four single-equation bounds, each valid for any Delta as long as the sign of
/// Gamma (up1/up2) or Gamma' (up3/up4) matches. Evaluated regardless of region.
UpperBound upper_bound_up1(const LinkCapacities& caps);
UpperBound upper_bound_up2(const LinkCapacities& caps);
UpperBound upper_bound_up3(const LinkCapacities& caps);
UpperBound upper_bound_up4(const LinkCapacities& caps);

/// Selects up1..up4 from the tolerance-classified signs of Delta and Gamma or Gamma'.
UpperBound upper_bound(const LinkCapacities& caps);

/// Capacities with C13 or C23 raised by delta.
LinkCapacities enlarge(const LinkCapacities& caps, EnlargedLink which);

/// Bound value without the +delta term.
double unenlarged_value(const UpperBound& bound);

/// Maximum dual row at tau on the enlarged capacities, minus the unenlarged value.
/// Never exceeds delta.
double enlargement_cost(const LinkCapacities& caps, const UpperBound& bound);

struct CertificateReport {
    bool passed = true;
    std::vector<std::string> failures;
    std::array<double, 4> rows{};  // dual rows at tau on the enlarged capacities
    double max_row = 0.0;
    double tau_sum = 0.0;
    double min_tau = 0.0;
    double tau_limit_margin = 0.0;  // dual-tau limit minus the constrained tau entry (>= 0 passes)
    double enlargement_cost = 0.0;
};

/// Weak-duality certificate: tau on the simplex, bound value at least every dual row on the
/// enlarged capacities (which dominate the original ones), the enlarged instance satisfies
/// C123 <= C13 + C23, and the dual-tau limit holds for the entry that carries the coherent
/// capacity C123 (or C012). Any violation is reported by name.
CertificateReport verify_dual_feasibility(const LinkCapacities& caps, const UpperBound& bound);

}  // namespace diamond
