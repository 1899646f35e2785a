#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace starhd {

/// Transport hook: GET `url` into `body`, return true on success or false
/// with `error` filled in. The default transport speaks http(s) and follows
/// redirects. Tests inject fakes to exercise cache and failure paths.
using HttpGet =
    std::function<bool(const std::string& url, std::string& body, std::string& error)>;

HttpGet default_http_transport();

inline constexpr const char* kDefaultBaseUrl = "https://www.chrsmrrs.com/graphkerneldatasets";

/// Resolves dataset `name` to a directory containing the TUDataset text
/// files. Cached layout: `{cache_dir}/{name}.zip` plus the extracted
/// `{cache_dir}/{name}/`. Downloads `{base_url}/{name}.zip` only when the
/// cache has neither; idempotent across calls and processes. Concurrent
/// fetches of the same name within one process are serialized. Throws
/// FetchError naming the dataset on download, archive, or layout problems.
std::filesystem::path fetch_dataset(const std::string& name,
                                    const std::filesystem::path& cache_dir,
                                    const std::string& base_url = kDefaultBaseUrl,
                                    const HttpGet& transport = {});

/// The eleven anticancer screens the experiment harness targets.
struct DatasetInfo {
  const char* name;
  std::size_t graph_count;
  const char* description;
};
const std::vector<DatasetInfo>& known_datasets();

}  // namespace starhd
