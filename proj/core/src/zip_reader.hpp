#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace starhd::detail {

struct ZipEntry {
  std::string name;
  std::uint32_t compressed_size = 0;
  std::uint32_t uncompressed_size = 0;
  std::uint32_t crc32 = 0;
  std::uint16_t method = 0;  // 0 = stored, 8 = deflate
  std::uint32_t local_header_offset = 0;
};

/// Central-directory listing of a zip archive. Throws FetchError on a
/// malformed archive. Zip64 archives are not supported.
std::vector<ZipEntry> list_zip(const std::filesystem::path& archive);

/// Extracts every file entry under `dest`, creating directories as needed
/// and verifying CRC32. Entry names escaping `dest` are rejected.
void extract_zip(const std::filesystem::path& archive, const std::filesystem::path& dest);

}  // namespace starhd::detail
