#include "betaot/generate.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "betaot/errors.hpp"

namespace betaot {
namespace {

[[noreturn]] void bad(const std::string& msg) { throw InputError("sample spec: " + msg); }

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<double> parse_vector(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty() && tok.front() == '+') tok.erase(0, 1);
    double v;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
      bad("value '" + text + "' of " + key + " is not a number list");
    out.push_back(v);
  }
  if (out.empty()) bad(key + " is empty");
  return out;
}

double parse_scalar(const std::string& key, const std::string& text) {
  const auto v = parse_vector(key, text);
  if (v.size() != 1) bad(key + " must be a single number");
  return v.front();
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  const double v = parse_scalar(key, text);
  if (v < 0 || v != std::floor(v)) bad(key + " must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

std::vector<double> broadcast(std::vector<double> v, std::size_t dim, const std::string& key) {
  if (v.size() == 1 && dim > 1) v.assign(dim, v.front());
  if (v.size() != dim) bad(key + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(dim));
  return v;
}

SampleComponent parse_component(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') bad("expected kind(args) in '" + text + "'");
  const std::string kind = trim(std::string_view(text).substr(0, open));
  std::map<std::string, std::string> args;
  std::stringstream ss(text.substr(open + 1, text.size() - open - 2));
  std::string item;
  SampleComponent c;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (item == "outlier") c.outlier = true;
      else bad("unknown flag '" + item + "'");
      continue;
    }
    args[trim(std::string_view(item).substr(0, eq))] = trim(std::string_view(item).substr(eq + 1));
  }
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = args.find(key);
    if (it == args.end()) return std::nullopt;
    std::string v = it->second;
    args.erase(it);
    return v;
  };

  const auto n = take("n");
  if (!n) bad(kind + " needs n=");
  c.count = parse_count("n", *n);
  const auto dim_text = take("dim");
  std::optional<std::size_t> dim;
  if (dim_text) dim = parse_count("dim", *dim_text);

  if (kind == "gaussian" || kind == "sphere") {
    c.kind = kind == "gaussian" ? SampleComponent::Kind::Gaussian : SampleComponent::Kind::Sphere;
    const auto center = take(kind == "gaussian" ? "mean" : "center");
    const auto scale = take(kind == "gaussian" ? "scale" : "radius");
    if (kind == "sphere" && !scale) bad("sphere needs radius=");
    if (center) c.center = parse_vector("center", *center);
    if (!dim) dim = center ? c.center.size() : 0;
    if (*dim == 0) bad(kind + " needs dim= or a center");
    c.center = center ? broadcast(c.center, *dim, "center") : std::vector<double>(*dim, 0.0);
    c.scale = scale ? parse_scalar("scale", *scale) : 1.0;
    if (c.scale < 0) bad("scale/radius must be >= 0");
  } else if (kind == "uniform") {
    c.kind = SampleComponent::Kind::Uniform;
    const auto lo = take("lo"), hi = take("hi");
    if (!lo || !hi) bad("uniform needs lo= and hi=");
    c.lo = parse_vector("lo", *lo);
    c.hi = parse_vector("hi", *hi);
    if (!dim) dim = std::max(c.lo.size(), c.hi.size());
    c.lo = broadcast(c.lo, *dim, "lo");
    c.hi = broadcast(c.hi, *dim, "hi");
    for (std::size_t k = 0; k < *dim; ++k)
      if (!(c.lo[k] <= c.hi[k])) bad("uniform box has lo > hi");
  } else if (kind == "point") {
    c.kind = SampleComponent::Kind::Point;
    const auto at = take("at");
    if (!at) bad("point needs at=");
    c.center = parse_vector("at", *at);
    if (!dim) dim = c.center.size();
    c.center = broadcast(c.center, *dim, "at");
  } else {
    bad("unknown kind '" + kind + "'");
  }
  if (!args.empty()) bad("unknown key '" + args.begin()->first + "' for " + kind);
  return c;
}

}  // namespace

SampleSpec parse_sample_spec(std::string_view text) {
  SampleSpec spec;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    const std::string t = trim(cur);
    if (t.empty()) bad("empty component");
    spec.components.push_back(parse_component(t));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '+' && depth == 0) {
      flush();
      continue;
    }
    cur.push_back(ch);
  }
  flush();
  for (const auto& c : spec.components) {
    const std::size_t d = c.kind == SampleComponent::Kind::Uniform ? c.lo.size() : c.center.size();
    if (spec.dim == 0) spec.dim = d;
    if (d != spec.dim) bad("components have different dimensions");
  }
  return spec;
}

Sample draw_sample(const SampleSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Sample s{PointCloud(spec.dim), {}};
  std::vector<double> p(spec.dim);
  for (const auto& c : spec.components) {
    for (std::size_t k = 0; k < c.count; ++k) {
      switch (c.kind) {
        case SampleComponent::Kind::Gaussian:
          for (std::size_t d = 0; d < spec.dim; ++d) p[d] = c.center[d] + c.scale * normal(rng);
          break;
        case SampleComponent::Kind::Uniform:
          for (std::size_t d = 0; d < spec.dim; ++d) p[d] = c.lo[d] + (c.hi[d] - c.lo[d]) * unit(rng);
          break;
        case SampleComponent::Kind::Point:
          p = c.center;
          break;
        case SampleComponent::Kind::Sphere: {
          double norm = 0.0;
          do {
            norm = 0.0;
            for (std::size_t d = 0; d < spec.dim; ++d) {
              p[d] = normal(rng);
              norm += p[d] * p[d];
            }
          } while (norm == 0.0);
          norm = std::sqrt(norm);
          for (std::size_t d = 0; d < spec.dim; ++d) p[d] = c.center[d] + c.scale * p[d] / norm;
          break;
        }
      }
      if (c.outlier) s.outliers.push_back(s.points.size());
      s.points.push_back(p);
    }
  }
  return s;
}

}  // namespace betaot
