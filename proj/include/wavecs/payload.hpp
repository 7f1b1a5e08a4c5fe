#pragma once

// .wcs payload file, all fields little-endian:
//
//   "WCS1"
//   width u32, height u32, wavelet family u8, tap_count u8, levels u8,
//   rr_coarse f64, rr_next f64, seed_coarse u64, seed_next u64,
//   len(y_coarse) u32, len(y_next) u32
//   body: 256 approx f64 (row-major), y_coarse f64..., y_next f64...
//   crc32 u32 of the body bytes (zlib polynomial)
//
// Decoders regenerate each sensing matrix from (seed, len(y), scale length)
// with kernels::parallel::sphere_columns. Wavelet analysis uses even-phase
// downsampling: approx[k] = sum_n h[n] x[(2k + n) mod N].

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "wavecs/codec.hpp"

namespace wavecs {

std::vector<std::uint8_t> serialize_payload(const CsPayload& payload);

/// Throws FormatError on bad magic, truncation, checksum mismatch, trailing
/// bytes or any header/body inconsistency.
CsPayload deserialize_payload(std::span<const std::uint8_t> bytes);

void write_payload(const CsPayload& payload, const std::filesystem::path& path);
CsPayload read_payload(const std::filesystem::path& path);

}  // namespace wavecs
