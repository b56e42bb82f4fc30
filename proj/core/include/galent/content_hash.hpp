#pragma once

#include <string>
#include <string_view>

#include "galent/finite_group.hpp"

namespace galent {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// Hash of the canonical element list (keys in index order) together with the
// representation and modulus. Equal for structurally identical groups.
std::string group_content_hash(const FiniteGroup& g);

}  // namespace galent
