#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qjl {

/// SHA-1 hex digest of a byte string.
std::string sha1_hex(std::string_view data);

/// Git-style blob hash: sha1("blob <len>\0" + data).
std::string git_blob_sha1(std::string_view data);

}  // namespace qjl
