#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace thoughtlab {

// CRC32 (IEEE 802.3 polynomial), used as the checkpoint data checksum.
uint32_t crc32(const void* data, size_t len, uint32_t crc = 0);

// FNV-1a 64-bit content digest, rendered as 16 hex chars. Change detection
// for run reports, not cryptographic.
std::string fnv1a64_hex(const void* data, size_t len);
std::string fnv1a64_hex(const std::string& s);
std::string file_digest(const std::string& path);

std::string base64_encode(const void* data, size_t len);
std::vector<uint8_t> base64_decode(const std::string& text);

}  // namespace thoughtlab
