#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "wittlab/witt_polys.hpp"

namespace wittlab {

inline constexpr const char* kCacheFormatVersion = "wpoly/1";
inline constexpr const char* kCacheEnvVar = "WITTLAB_CACHE";

// Flag value, else $WITTLAB_CACHE, else ./witt-cache.
std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag);

// On-disk store for WittPolySet, one file witt_p{p}_n{n}.wpoly per set.
//
// The format is line-oriented UTF-8 text:
//
//   wpoly/1
//   prime 2
//   level 2
//   variables X0 X1 Y0 Y1
//   family sum 2
//   poly 0 2
//   1 1 0 0 0
//   1 0 0 1 0
//   ...
//   end
//
// Each monomial line is the coefficient followed by the exponent of every
// variable in header order. Writers go through a temporary file and an
// atomic rename, so readers never observe a torn file.
class PolyCache {
 public:
  explicit PolyCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(unsigned p, unsigned n) const;

  void store(const WittPolySet& set) const;
  // Absent when no file exists; throws CacheError when the file is corrupt.
  std::optional<WittPolySet> load(unsigned p, unsigned n) const;

  // Loads, or regenerates (and re-stores) when absent or corrupt. Corruption
  // is reported on stderr with the file path.
  WittPolySet load_or_generate(unsigned p, unsigned n) const;

 private:
  std::filesystem::path dir_;
};

std::string serialize_witt_polys(const WittPolySet& set);
WittPolySet parse_witt_polys(const std::string& text, const std::string& origin);

}  // namespace wittlab
