#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "neass/fock.hpp"

namespace neass {

/// Binary square-matrix layout: 8-byte magic "NEASSMAT", little-endian
/// uint64 dimension, then row-major float64 pairs (re, im) per entry.
void write_matrix(const std::filesystem::path& path, const Mat& m);
Mat read_matrix(const std::filesystem::path& path);

/// FNV-1a 64-bit hash of a byte string; used to fingerprint canonical
/// scenario dumps inside result files.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

}  // namespace neass
