#include "galent/spec_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "galent/content_hash.hpp"
#include "galent/error.hpp"

namespace galent {
namespace {

using nlohmann::json;

const json& field(const json& j, const std::string& path, const char* name) {
  if (!j.contains(name)) {
    throw SpecError(path.empty() ? "/" : path, std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SpecError(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint32_t positive(const json& j, const std::string& path, std::int64_t lo, std::int64_t hi) {
  const std::int64_t v = integer(j, path);
  if (v < lo || v > hi) {
    throw SpecError(path, "expected an integer in [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
  }
  return static_cast<std::uint32_t>(v);
}

Mat2 parse_matrix(const json& j, const std::string& path, std::uint32_t modulus) {
  if (!j.is_array() || j.size() != 2) throw SpecError(path, "expected [[a,b],[c,d]]");
  std::int64_t e[4];
  for (int r = 0; r < 2; ++r) {
    const std::string row_path = path + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != 2) throw SpecError(row_path, "expected a row [x,y]");
    for (int c = 0; c < 2; ++c) e[2 * r + c] = integer(j[r][c], row_path + "/" + std::to_string(c));
  }
  try {
    return Mat2(e[0], e[1], e[2], e[3], modulus);
  } catch (const PreconditionError& err) {
    throw SpecError(path, err.what());
  }
}

GroupSpec parse(const json& j, const std::string& path) {
  if (!j.is_object()) throw SpecError(path.empty() ? "/" : path, "expected an object");
  const json& kind = field(j, path, "kind");
  if (!kind.is_string()) throw SpecError(path + "/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  GroupSpec s;
  if (k == "gl2" || k == "sl2" || k == "generators") {
    s.kind = k == "gl2" ? GroupSpec::Kind::kGl2
             : k == "sl2" ? GroupSpec::Kind::kSl2
                          : GroupSpec::Kind::kGenerators;
    s.modulus = positive(field(j, path, "modulus"), path + "/modulus", 2, kMaxModulus);
    if (s.kind == GroupSpec::Kind::kGenerators) {
      const json& ms = field(j, path, "matrices");
      if (!ms.is_array()) throw SpecError(path + "/matrices", "expected an array");
      for (std::size_t i = 0; i < ms.size(); ++i)
        s.matrices.push_back(parse_matrix(ms[i], path + "/matrices/" + std::to_string(i), s.modulus));
    }
  } else if (k == "product" || k == "fiber") {
    s.kind = k == "product" ? GroupSpec::Kind::kProduct : GroupSpec::Kind::kFiber;
    s.left = std::make_shared<GroupSpec>(parse(field(j, path, "left"), path + "/left"));
    s.right = std::make_shared<GroupSpec>(parse(field(j, path, "right"), path + "/right"));
    if (s.kind == GroupSpec::Kind::kProduct) {
      s.p = positive(field(j, path, "p"), path + "/p", 2, kMaxModulus);
      s.q = positive(field(j, path, "q"), path + "/q", 2, kMaxModulus);
    } else {
      s.quotient_order =
          positive(field(j, path, "quotient_order"), path + "/quotient_order", 1, 1u << 20);
    }
  } else {
    throw SpecError(path + "/kind", "unknown kind \"" + k + "\"");
  }
  return s;
}

json to_json_value(const GroupSpec& s) {
  json j;
  switch (s.kind) {
    case GroupSpec::Kind::kGl2: j["kind"] = "gl2"; break;
    case GroupSpec::Kind::kSl2: j["kind"] = "sl2"; break;
    case GroupSpec::Kind::kGenerators: j["kind"] = "generators"; break;
    case GroupSpec::Kind::kProduct: j["kind"] = "product"; break;
    case GroupSpec::Kind::kFiber: j["kind"] = "fiber"; break;
  }
  switch (s.kind) {
    case GroupSpec::Kind::kGenerators: {
      json ms = json::array();
      for (const Mat2& m : s.matrices) ms.push_back({{m.a(), m.b()}, {m.c(), m.d()}});
      j["matrices"] = std::move(ms);
      [[fallthrough]];
    }
    case GroupSpec::Kind::kGl2:
    case GroupSpec::Kind::kSl2:
      j["modulus"] = s.modulus;
      break;
    case GroupSpec::Kind::kProduct:
      j["p"] = s.p;
      j["q"] = s.q;
      j["left"] = to_json_value(*s.left);
      j["right"] = to_json_value(*s.right);
      break;
    case GroupSpec::Kind::kFiber:
      j["quotient_order"] = s.quotient_order;
      j["left"] = to_json_value(*s.left);
      j["right"] = to_json_value(*s.right);
      break;
  }
  return j;
}

std::optional<EntContext> matrix_context(const GroupPtr& g) {
  if (!g->is_matrix_group()) return std::nullopt;
  auto split = two_prime_split(g->modulus());
  if (!split) return std::nullopt;
  return make_context(g, split->first, split->second);
}

BuiltSpec build_at(const GroupSpec& s, std::size_t cap, const std::string& path) {
  BuiltSpec out;
  switch (s.kind) {
    case GroupSpec::Kind::kGl2:
      out.group = general_linear_group(s.modulus, cap);
      break;
    case GroupSpec::Kind::kSl2:
      out.group = special_linear_group(s.modulus, cap);
      break;
    case GroupSpec::Kind::kGenerators:
      out.group = generate_group(s.matrices, s.modulus, cap);
      break;
    case GroupSpec::Kind::kProduct: {
      GroupPtr a = build_at(*s.left, cap, path + "/left").group;
      GroupPtr b = build_at(*s.right, cap, path + "/right").group;
      if (s.p == s.q || !is_prime(s.p) || !is_prime(s.q))
        throw SpecError(path + "/q", "p and q must be distinct primes");
      if (a->is_matrix_group() && a->modulus() != s.p)
        throw SpecError(path + "/p", "p must equal the modulus of the left group");
      if (b->is_matrix_group() && b->modulus() != s.q)
        throw SpecError(path + "/q", "q must equal the modulus of the right group");
      try {
        out.context = make_product_context(a, b, cap);
      } catch (const CapExceeded&) {
        throw;
      } catch (const PreconditionError& e) {
        throw SpecError(path, e.what());
      }
      out.group = out.context->group;
      return out;
    }
    case GroupSpec::Kind::kFiber: {
      GroupPtr a = build_at(*s.left, cap, path + "/left").group;
      GroupPtr b = build_at(*s.right, cap, path + "/right").group;
      try {
        out.context = make_fiber_context(a, b, s.quotient_order, cap);
      } catch (const CapExceeded&) {
        throw;
      } catch (const PreconditionError& e) {
        throw SpecError(path + "/quotient_order", e.what());
      }
      out.group = out.context->group;
      return out;
    }
  }
  out.context = matrix_context(out.group);
  return out;
}

}  // namespace

GroupSpec parse_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError("/", std::string("malformed JSON: ") + e.what());
  }
  return parse(j, "");
}

GroupSpec read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read spec file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string to_json(const GroupSpec& spec) { return to_json_value(spec).dump(); }

std::string spec_hash(const GroupSpec& spec) { return sha256_hex(to_json(spec)); }

BuiltSpec build(const GroupSpec& spec, std::size_t cap) { return build_at(spec, cap, ""); }

std::optional<std::pair<std::uint32_t, std::uint32_t>> two_prime_split(std::uint32_t n) {
  for (std::uint32_t p = 2; p * p < n; ++p) {
    if (n % p) continue;
    const std::uint32_t q = n / p;
    if (is_prime(p) && is_prime(q) && p != q) return std::make_pair(p, q);
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace galent
