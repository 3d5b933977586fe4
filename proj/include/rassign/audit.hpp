#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rassign/assignment.hpp"

namespace rassign {

struct AuditCheck {
    std::string claim;
    std::string expected;
    std::string actual;
    bool ok = false;
};

struct AuditReport {
    std::string fixture;
    std::vector<AuditCheck> checks;

    bool passed() const;
    // nullptr when every check confirms.
    const AuditCheck* first_divergence() const;
};

// Registered fixture ids in replay order.
const std::vector<std::string>& audit_ids();

// Replays one fixture's argument; InputError for an unknown id.
AuditReport audit_fixture(std::string_view id, const Budget& budget = {});

}  // namespace rassign
