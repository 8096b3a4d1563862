#include "exthall/backend.hpp"

#include "exthall/errors.hpp"

namespace exthall {

namespace {

int parse_prime(const std::string& s) {
  try {
    std::size_t pos = 0;
    int p = std::stoi(s, &pos);
    if (pos != s.size()) throw ParseError("trailing characters in field modulus: " + s);
    return p;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad field modulus: " + s);
  }
}

std::pair<int, int> parse_window(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw ParseError("window must look like lo..hi, got " + s);
  try {
    int lo = std::stoi(s.substr(0, dots));
    int hi = std::stoi(s.substr(dots + 2));
    return {lo, hi};
  } catch (const std::exception&) {
    throw ParseError("bad window bounds: " + s);
  }
}

}  // namespace

std::shared_ptr<Model> make_backend(const std::string& spec, std::uint64_t budget) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("backend spec needs a kind prefix: " + spec);
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);

  if (kind == "quiver") {
    auto at = rest.rfind('@');
    if (at == std::string::npos) throw ParseError("quiver spec needs @<p>: " + spec);
    std::string name = rest.substr(0, at);
    int p = parse_prime(rest.substr(at + 1));
    QuiverSpec q;
    if (name == "A1")
      q = QuiverSpec::linear(1);
    else if (name == "A2")
      q = QuiverSpec::linear(2);
    else if (name == "A3")
      q = QuiverSpec::linear(3);
    else if (name.rfind("file=", 0) == 0)
      q = QuiverSpec::from_file(name.substr(5));
    else
      throw ParseError("unknown quiver name: " + name);
    return std::make_shared<QuiverBackend>(std::move(q), p, budget);
  }

  if (kind == "graded" || kind == "interval") {
    if (rest.empty() || rest[0] != '@') throw ParseError(kind + " spec needs @<p>: " + spec);
    auto comma = rest.find(',');
    if (comma == std::string::npos || rest.compare(comma + 1, 7, "window=") != 0)
      throw ParseError(kind + " spec needs ,window=<lo>..<hi>: " + spec);
    int p = parse_prime(rest.substr(1, comma - 1));
    auto [lo, hi] = parse_window(rest.substr(comma + 8));
    return std::make_shared<GradedBackend>(p, lo, hi, kind == "interval", budget);
  }

  throw ParseError("unknown backend kind: " + kind);
}

}  // namespace exthall
