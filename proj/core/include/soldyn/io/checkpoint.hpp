#pragma once

#include <cstdint>
#include <string>

#include "soldyn/field.hpp"

namespace soldyn::io {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
    ComplexField field;
    std::string run_id;
    std::uint32_t version = kCheckpointVersion;
};

/// Binary field checkpoint: magic, version, run id, time stamp, grid
/// descriptor, little-endian f64 (re, im) pairs in row-major order, FNV-1a
/// checksum of the payload. Round trips are bit exact.
void save_checkpoint(const std::string& path, const ComplexField& field,
                     const std::string& run_id);

/// Verifies magic, version and checksum; truncation or corruption raise a
/// corrupt error, a future version an unsupported error.
Checkpoint load_checkpoint(const std::string& path);

std::uint64_t fnv1a64(const void* data, std::size_t size);

}  // namespace soldyn::io
