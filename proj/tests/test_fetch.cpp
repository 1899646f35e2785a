#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "starhd/errors.hpp"
#include "starhd/fetch.hpp"
#include "starhd/tudataset.hpp"
#include "support/zip_builder.hpp"

using namespace starhd;
namespace fs = std::filesystem;

namespace {

fs::path fresh_cache(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("starhd_cache_" + tag);
  fs::remove_all(dir);
  return dir;
}

std::string fixture_zip(const std::string& name, bool nested, bool deflate) {
  const std::string prefix = nested ? name + "/" : "";
  return testsupport::build_zip({
      {prefix + name + "_A.txt", "1, 2\n2, 1\n", deflate},
      {prefix + name + "_graph_indicator.txt", "1\n1\n", deflate},
      {prefix + name + "_graph_labels.txt", "1\n", deflate},
  });
}

HttpGet serving(const std::string& blob, int* calls = nullptr) {
  return [blob, calls](const std::string&, std::string& body, std::string&) {
    if (calls) ++*calls;
    body = blob;
    return true;
  };
}

HttpGet failing(const std::string& message) {
  return [message](const std::string&, std::string&, std::string& error) {
    error = message;
    return false;
  };
}

}  // namespace

TEST_CASE("fetch downloads, extracts, and is idempotent") {
  for (bool deflate : {false, true}) {
    CAPTURE(deflate);
    const fs::path cache = fresh_cache(deflate ? "deflate" : "stored");
    int calls = 0;
    const auto transport = serving(fixture_zip("TINY", true, deflate), &calls);

    const fs::path dir = fetch_dataset("TINY", cache, "http://example.invalid/data", transport);
    CHECK(calls == 1);
    CHECK(fs::exists(cache / "TINY.zip"));
    const Dataset dataset = parse_tudataset(dir, "TINY");
    CHECK(dataset.graphs.size() == 1);
    CHECK(dataset.graphs[0].num_nodes == 2);

    // cache hit: no new transport call
    const fs::path again = fetch_dataset("TINY", cache, "http://example.invalid/data", transport);
    CHECK(again == dir);
    CHECK(calls == 1);
  }
}

TEST_CASE("fetch uses a pre-seeded archive without any transport") {
  const fs::path cache = fresh_cache("preseeded");
  fs::create_directories(cache);
  testsupport::write_file((cache / "FLAT.zip").string(), fixture_zip("FLAT", false, false));
  const fs::path dir =
      fetch_dataset("FLAT", cache, "http://example.invalid/data", failing("no network"));
  CHECK(parse_tudataset(dir, "FLAT").graphs.size() == 1);
}

TEST_CASE("fetch failure names the dataset") {
  const fs::path cache = fresh_cache("nofetch");
  try {
    (void)fetch_dataset("NOPE", cache, "http://example.invalid/data", failing("connection refused"));
    FAIL("expected FetchError");
  } catch (const FetchError& e) {
    const std::string what = e.what();
    CHECK(what.find("NOPE") != std::string::npos);
    CHECK(what.find("connection refused") != std::string::npos);
  }
}

TEST_CASE("corrupt archive is rejected and evicted") {
  const fs::path cache = fresh_cache("corrupt");
  CHECK_THROWS_AS(
      (void)fetch_dataset("BAD", cache, "http://example.invalid/d", serving("not a zip at all")),
      FetchError);
  CHECK(!fs::exists(cache / "BAD.zip"));  // bad archive does not wedge the cache
}

TEST_CASE("archive missing mandatory members is rejected") {
  const fs::path cache = fresh_cache("incomplete");
  const std::string zip = testsupport::build_zip({{"X/X_A.txt", "1, 2\n", false}});
  CHECK_THROWS_AS((void)fetch_dataset("X", cache, "http://example.invalid/d", serving(zip)),
                  FetchError);
}

TEST_CASE("zip entries escaping the destination are rejected") {
  const fs::path cache = fresh_cache("escape");
  const std::string zip = testsupport::build_zip({{"../evil.txt", "boom", false}});
  CHECK_THROWS_AS((void)fetch_dataset("EVIL", cache, "http://example.invalid/d", serving(zip)),
                  FetchError);
}

TEST_CASE("crc mismatch is detected") {
  const fs::path cache = fresh_cache("crc");
  std::string zip = fixture_zip("CRC", true, false);
  // flip one content byte inside the first stored member
  const auto pos = zip.find("1, 2");
  REQUIRE(pos != std::string::npos);
  zip[pos] = '9';
  CHECK_THROWS_AS((void)fetch_dataset("CRC", cache, "http://example.invalid/d", serving(zip)),
                  FetchError);
}
