#include "zip_reader.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <sstream>

#include "starhd/errors.hpp"

namespace starhd::detail {

namespace {

namespace fs = std::filesystem;

constexpr std::uint32_t kEocdSig = 0x06054b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kLocalSig = 0x04034b50;

std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

[[noreturn]] void corrupt(const fs::path& archive, const std::string& what) {
  throw FetchError("corrupt archive " + archive.string() + ": " + what);
}

std::vector<unsigned char> read_span(std::ifstream& in, std::uint64_t offset, std::size_t size,
                                     const fs::path& archive) {
  std::vector<unsigned char> buf(size);
  in.seekg(static_cast<std::streamoff>(offset));
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(size));
  if (!in) corrupt(archive, "truncated read");
  return buf;
}

void inflate_raw(const std::vector<unsigned char>& compressed, std::vector<unsigned char>& out,
                 const fs::path& archive) {
  z_stream zs;
  std::memset(&zs, 0, sizeof(zs));
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) corrupt(archive, "inflate init failed");
  zs.next_in = const_cast<unsigned char*>(compressed.data());
  zs.avail_in = static_cast<uInt>(compressed.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || zs.avail_out != 0) corrupt(archive, "deflate stream error");
}

}  // namespace

std::vector<ZipEntry> list_zip(const fs::path& archive) {
  std::ifstream in(archive, std::ios::binary);
  if (!in) throw FetchError("cannot open archive " + archive.string());
  in.seekg(0, std::ios::end);
  const std::uint64_t file_size = static_cast<std::uint64_t>(in.tellg());
  if (file_size < 22) corrupt(archive, "too small for an end-of-central-directory record");

  // The EOCD sits at the end, possibly preceded by a comment up to 64 KiB.
  const std::size_t tail_size = static_cast<std::size_t>(std::min<std::uint64_t>(file_size, 22 + 65535));
  const auto tail = read_span(in, file_size - tail_size, tail_size, archive);
  std::size_t eocd = tail_size;
  for (std::size_t i = tail_size - 22 + 1; i-- > 0;) {
    if (get_u32(tail.data() + i) == kEocdSig) {
      eocd = i;
      break;
    }
  }
  if (eocd == tail_size) corrupt(archive, "no end-of-central-directory record");

  const std::uint16_t entry_count = get_u16(tail.data() + eocd + 10);
  const std::uint32_t cd_size = get_u32(tail.data() + eocd + 12);
  const std::uint32_t cd_offset = get_u32(tail.data() + eocd + 16);
  if (cd_offset == 0xFFFFFFFFu) corrupt(archive, "zip64 archives are not supported");
  if (static_cast<std::uint64_t>(cd_offset) + cd_size > file_size) {
    corrupt(archive, "central directory outside the file");
  }

  const auto cd = read_span(in, cd_offset, cd_size, archive);
  std::vector<ZipEntry> entries;
  entries.reserve(entry_count);
  std::size_t pos = 0;
  for (std::uint16_t e = 0; e < entry_count; ++e) {
    if (pos + 46 > cd.size() || get_u32(cd.data() + pos) != kCentralSig) {
      corrupt(archive, "bad central directory entry");
    }
    ZipEntry entry;
    entry.method = get_u16(cd.data() + pos + 10);
    entry.crc32 = get_u32(cd.data() + pos + 16);
    entry.compressed_size = get_u32(cd.data() + pos + 20);
    entry.uncompressed_size = get_u32(cd.data() + pos + 24);
    const std::uint16_t name_len = get_u16(cd.data() + pos + 28);
    const std::uint16_t extra_len = get_u16(cd.data() + pos + 30);
    const std::uint16_t comment_len = get_u16(cd.data() + pos + 32);
    entry.local_header_offset = get_u32(cd.data() + pos + 42);
    if (pos + 46 + name_len > cd.size()) corrupt(archive, "truncated entry name");
    entry.name.assign(reinterpret_cast<const char*>(cd.data() + pos + 46), name_len);
    entries.push_back(std::move(entry));
    pos += 46 + name_len + extra_len + comment_len;
  }
  return entries;
}

void extract_zip(const fs::path& archive, const fs::path& dest) {
  const auto entries = list_zip(archive);
  std::ifstream in(archive, std::ios::binary);
  if (!in) throw FetchError("cannot open archive " + archive.string());

  const fs::path canonical_dest = fs::weakly_canonical(dest);
  for (const ZipEntry& entry : entries) {
    if (entry.name.empty()) continue;
    const fs::path target = fs::weakly_canonical(dest / entry.name);
    const auto rel = fs::relative(target, canonical_dest);
    if (rel.empty() || rel.native().starts_with("..")) {
      corrupt(archive, "entry '" + entry.name + "' escapes the destination");
    }
    if (entry.name.back() == '/') {
      fs::create_directories(target);
      continue;
    }
    fs::create_directories(target.parent_path());

    const auto header = read_span(in, entry.local_header_offset, 30, archive);
    if (get_u32(header.data()) != kLocalSig) corrupt(archive, "bad local header");
    const std::uint16_t name_len = get_u16(header.data() + 26);
    const std::uint16_t extra_len = get_u16(header.data() + 28);
    const std::uint64_t data_offset = entry.local_header_offset + 30u + name_len + extra_len;

    const auto compressed = read_span(in, data_offset, entry.compressed_size, archive);
    std::vector<unsigned char> data;
    if (entry.method == 0) {
      data = compressed;
    } else if (entry.method == 8) {
      data.resize(entry.uncompressed_size);
      inflate_raw(compressed, data, archive);
    } else {
      std::ostringstream msg;
      msg << "unsupported compression method " << entry.method << " for '" << entry.name << "'";
      corrupt(archive, msg.str());
    }
    if (data.size() != entry.uncompressed_size) corrupt(archive, "size mismatch");
    const auto crc =
        ::crc32(::crc32(0L, Z_NULL, 0), data.data(), static_cast<uInt>(data.size()));
    if (static_cast<std::uint32_t>(crc) != entry.crc32) {
      corrupt(archive, "crc mismatch in '" + entry.name + "'");
    }

    std::ofstream out(target, std::ios::binary);
    if (!out) throw IoError("cannot write " + target.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
  }
}

}  // namespace starhd::detail
