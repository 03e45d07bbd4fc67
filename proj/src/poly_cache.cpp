#include "wittlab/poly_cache.hpp"

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wittlab/errors.hpp"

namespace wittlab {

namespace fs = std::filesystem;

fs::path resolve_cache_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return fs::path(*flag);
  if (const char* env = std::getenv(kCacheEnvVar); env && *env) return fs::path(env);
  return fs::path("witt-cache");
}

PolyCache::PolyCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path PolyCache::file_for(unsigned p, unsigned n) const {
  return dir_ / ("witt_p" + std::to_string(p) + "_n" + std::to_string(n) + ".wpoly");
}

namespace {

void write_family(std::ostream& os, const std::string& name, const std::vector<IntPoly>& family) {
  os << "family " << name << " " << family.size() << "\n";
  for (std::size_t k = 0; k < family.size(); ++k) {
    os << "poly " << k << " " << family[k].num_terms() << "\n";
    for (const auto& [e, c] : family[k].terms()) {
      os << c.get_str();
      for (auto x : e) os << " " << x;
      os << "\n";
    }
  }
}

class LineReader {
 public:
  LineReader(const std::string& text, std::string origin) : in_(text), origin_(std::move(origin)) {}

  std::istringstream next(const std::string& expected_keyword) {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of file, expected '" + expected_keyword + "'");
    ++line_no_;
    std::istringstream ls(line);
    if (!expected_keyword.empty()) {
      std::string kw;
      ls >> kw;
      if (kw != expected_keyword) fail("expected '" + expected_keyword + "', found '" + kw + "'");
    }
    return ls;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw CacheError(origin_, "line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istringstream in_;
  std::string origin_;
  std::size_t line_no_ = 0;
};

std::vector<IntPoly> read_family(LineReader& r, const std::string& name, const std::vector<std::string>& vars) {
  auto header = r.next("family");
  std::string got;
  std::size_t count = 0;
  if (!(header >> got >> count) || got != name) r.fail("expected family " + name);
  std::vector<IntPoly> family;
  for (std::size_t k = 0; k < count; ++k) {
    auto ph = r.next("poly");
    std::size_t idx = 0, nterms = 0;
    if (!(ph >> idx >> nterms) || idx != k) r.fail("bad poly header in family " + name);
    IntPoly poly(vars);
    for (std::size_t t = 0; t < nterms; ++t) {
      auto ls = r.next("");
      std::string coeff;
      if (!(ls >> coeff)) r.fail("missing coefficient");
      BigInt c;
      if (c.set_str(coeff, 10) != 0) r.fail("bad coefficient '" + coeff + "'");
      Exponents e(vars.size());
      for (auto& x : e)
        if (!(ls >> x)) r.fail("short exponent vector");
      std::string extra;
      if (ls >> extra) r.fail("trailing data on monomial line");
      if (c == 0) r.fail("zero coefficient stored");
      poly.add_term(e, c);
    }
    if (poly.num_terms() != nterms) r.fail("duplicate monomials");
    family.push_back(std::move(poly));
  }
  return family;
}

}  // namespace

std::string serialize_witt_polys(const WittPolySet& set) {
  std::ostringstream os;
  os << kCacheFormatVersion << "\n";
  os << "prime " << set.prime << "\n";
  os << "level " << set.level << "\n";
  os << "variables";
  for (const auto& v : witt_variables(set.level)) os << " " << v;
  os << "\n";
  write_family(os, "ghost", set.ghost);
  write_family(os, "sum", set.sum);
  write_family(os, "product", set.product);
  write_family(os, "negation", set.negation);
  write_family(os, "frobenius", set.frobenius);
  os << "end\n";
  return os.str();
}

WittPolySet parse_witt_polys(const std::string& text, const std::string& origin) {
  LineReader r(text, origin);
  {
    auto ls = r.next("");
    std::string version;
    ls >> version;
    if (version != kCacheFormatVersion) r.fail("unsupported format version '" + version + "'");
  }
  WittPolySet s;
  if (!(r.next("prime") >> s.prime)) r.fail("bad prime");
  if (!(r.next("level") >> s.level)) r.fail("bad level");
  auto vl = r.next("variables");
  std::vector<std::string> vars;
  for (std::string v; vl >> v;) vars.push_back(v);
  if (vars != witt_variables(s.level)) r.fail("variable header does not match level");
  s.ghost = read_family(r, "ghost", vars);
  s.sum = read_family(r, "sum", vars);
  s.product = read_family(r, "product", vars);
  s.negation = read_family(r, "negation", vars);
  s.frobenius = read_family(r, "frobenius", vars);
  r.next("end");
  return s;
}

void PolyCache::store(const WittPolySet& set) const {
  fs::create_directories(dir_);
  const fs::path target = file_for(set.prime, set.level);
  static std::atomic<unsigned> counter{0};
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(stamp) + "." +
                       std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError(tmp.string(), "cannot open for writing");
    out << serialize_witt_polys(set);
    out.flush();
    if (!out) throw CacheError(tmp.string(), "write failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw CacheError(target.string(), "atomic rename failed: " + ec.message());
  }
}

std::optional<WittPolySet> PolyCache::load(unsigned p, unsigned n) const {
  const fs::path path = file_for(p, n);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  WittPolySet s = parse_witt_polys(buf.str(), path.string());
  if (s.prime != p || s.level != n) throw CacheError(path.string(), "header does not match file name");
  return s;
}

WittPolySet PolyCache::load_or_generate(unsigned p, unsigned n) const {
  try {
    if (auto s = load(p, n)) return *s;
  } catch (const CacheError& e) {
    std::cerr << "warning: corrupt Witt polynomial cache " << e.what() << "; regenerating\n";
  }
  WittPolySet s = generate_witt_polys(p, n);
  try {
    store(s);
  } catch (const CacheError& e) {
    std::cerr << "warning: could not write cache " << e.what() << "\n";
  }
  return s;
}

}  // namespace wittlab
