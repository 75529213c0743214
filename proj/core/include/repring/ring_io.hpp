#pragma once

#include <string>

#include "repring/ring.hpp"

namespace repring {

/// Ring JSON contract:
/// {"name": str, "identity": label, "closed": bool,
///  "basis": [{"label","dim","star","rho_mult"}...],
///  "products": [{"i": label, "j": label,
///                "terms": [{"k": label, "c": int}...]}...]}
/// Products are listed once per unordered pair; a missing pair is an error
/// for finite rings. Loading validates the axioms exhaustively.
std::string export_ring_json(const RingSpec& ring);
RingSpec load_ring_json(const std::string& text, bool validate = true);
RingSpec load_ring_file(const std::string& path, bool validate = true);
void save_ring_file(const RingSpec& ring, const std::string& path);

}  // namespace repring
