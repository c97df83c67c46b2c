#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "navgraph/dataset.hpp"

namespace navgraph {

/// Loads an fvecs file: per record, a little-endian 32-bit dimension followed
/// by that many little-endian 32-bit IEEE-754 floats. All records must share
/// one dimension. An empty file yields an n=0 dataset (rejected by downstream
/// operations). Malformed input raises std::runtime_error naming the byte
/// offset of the offending record.
Dataset load_fvecs(const std::string& path);

/// Writes a dataset in fvecs layout; load_fvecs(save_fvecs(x)) is bit-exact.
void save_fvecs(const std::string& path, const Dataset& data);

/// Loads an ivecs file (identical layout with 32-bit signed integers).
std::vector<std::vector<std::int32_t>> load_ivecs(const std::string& path);

void save_ivecs(const std::string& path, const std::vector<std::vector<std::int32_t>>& rows);

}  // namespace navgraph
