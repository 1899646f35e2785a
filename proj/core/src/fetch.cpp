#include "starhd/fetch.hpp"

#include <fstream>
#include <map>
#include <mutex>

#include "starhd/errors.hpp"
#include "zip_reader.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

namespace starhd {

namespace {

namespace fs = std::filesystem;

constexpr const char* kMandatorySuffixes[] = {"_A.txt", "_graph_indicator.txt",
                                              "_graph_labels.txt"};

// One lock per dataset name so concurrent fetches of the same dataset
// serialize instead of racing on the cache files.
std::mutex& lock_for(const std::string& name) {
  static std::mutex registry_mutex;
  static std::map<std::string, std::mutex> locks;
  std::lock_guard guard(registry_mutex);
  return locks[name];
}

bool has_mandatory_files(const fs::path& dir, const std::string& name) {
  for (const char* suffix : kMandatorySuffixes) {
    if (!fs::exists(dir / (name + suffix))) return false;
  }
  return true;
}

// TUDataset archives nest the files under a top-level "{name}/" directory;
// synthetic archives may keep them flat. Accept either.
fs::path locate_extracted(const fs::path& extract_root, const std::string& name) {
  if (has_mandatory_files(extract_root, name)) return extract_root;
  if (has_mandatory_files(extract_root / name, name)) return extract_root / name;
  throw FetchError("dataset " + name + ": archive is missing the mandatory files");
}

void download(const std::string& name, const std::string& url, const fs::path& zip_path,
              const HttpGet& transport) {
  std::string body;
  std::string error;
  if (!transport(url, body, error)) {
    throw FetchError("dataset " + name + ": download of " + url + " failed: " + error);
  }
  const fs::path tmp = zip_path.string() + ".part";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
  }
  fs::rename(tmp, zip_path);
}

}  // namespace

HttpGet default_http_transport() {
  return [](const std::string& url, std::string& body, std::string& error) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
      error = "unsupported url: " + url;
      return false;
    }
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(300);
    auto res = client.Get(path);
    if (!res) {
      error = httplib::to_string(res.error());
      return false;
    }
    if (res->status != 200) {
      error = "http status " + std::to_string(res->status);
      return false;
    }
    body = std::move(res->body);
    return true;
  };
}

fs::path fetch_dataset(const std::string& name, const fs::path& cache_dir,
                       const std::string& base_url, const HttpGet& transport) {
  std::lock_guard guard(lock_for(name));
  fs::create_directories(cache_dir);

  const fs::path extracted_dir = cache_dir / name;
  if (fs::exists(extracted_dir)) {
    if (has_mandatory_files(extracted_dir, name) ||
        has_mandatory_files(extracted_dir / name, name)) {
      return locate_extracted(extracted_dir, name);
    }
  }

  const fs::path zip_path = cache_dir / (name + ".zip");
  if (!fs::exists(zip_path)) {
    const std::string url = base_url + "/" + name + ".zip";
    download(name, url, zip_path, transport ? transport : default_http_transport());
  }

  try {
    detail::extract_zip(zip_path, extracted_dir);
  } catch (const FetchError&) {
    // A corrupt cached archive should not wedge the cache forever.
    std::error_code ec;
    fs::remove(zip_path, ec);
    throw;
  }
  return locate_extracted(extracted_dir, name);
}

const std::vector<DatasetInfo>& known_datasets() {
  static const std::vector<DatasetInfo> datasets = {
      {"MCF-7", 28972, "breast"},
      {"MOLT-4", 41810, "leukemia"},
      {"NCI-H23", 42164, "non-small cell lung"},
      {"OVCAR-8", 42386, "ovarian"},
      {"PC-3", 28679, "prostate"},
      {"P388", 46440, "leukemia"},
      {"SF-295", 40350, "central nervous system"},
      {"SN12C", 41855, "renal"},
      {"SW-620", 42405, "colon"},
      {"UACC257", 41864, "melanoma"},
      {"Yeast", 83933, "yeast anticancer"},
  };
  return datasets;
}

}  // namespace starhd
