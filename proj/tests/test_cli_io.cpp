#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "galent/content_hash.hpp"
#include "galent/error.hpp"
#include "galent/lattice_cache.hpp"
#include "galent/report.hpp"
#include "galent/spec_io.hpp"
#include "json.hpp"

namespace galent {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kFixtures = GALENT_FIXTURE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return (kFixtures / name).string(); }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("galent-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string spec_error_path(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(Spec, Examples) {
  EXPECT_EQ(build(parse_spec(R"({"kind":"gl2","modulus":2})")).group->order(), 6u);
  EXPECT_EQ(build(read_spec_file(fixture("sigma-tau-mod5.json"))).group->order(), 6u);
  // The upper-triangular τ' generates a dihedral group of order 2q instead.
  const auto printed = parse_spec(
      R"({"kind":"generators","modulus":5,"matrices":[[[1,1],[0,4]],[[4,1],[0,1]]]})");
  EXPECT_EQ(build(printed).group->order(), 20u);
  EXPECT_EQ(build(parse_spec(R"({"kind":"sl2","modulus":3})")).group->order(), 24u);
}

TEST(Spec, ContextsAreAssembled) {
  const auto prod = build(read_spec_file(fixture("prod-gl2-2-gl2-3.json")));
  ASSERT_TRUE(prod.context);
  EXPECT_EQ(prod.group->order(), 288u);
  EXPECT_EQ(prod.context->p, 2u);
  EXPECT_EQ(prod.context->q, 3u);
  const auto mod6 = build(read_spec_file(fixture("fiber-s3-gl2-3-mod6.json")));
  ASSERT_TRUE(mod6.context);
  EXPECT_EQ(mod6.group->order(), 144u);
  EXPECT_EQ(entanglement_type(*mod6.context).label, "Z/2");
  const auto fiber = build(read_spec_file(fixture("fiber-s3-s3-mod10.json")));
  ASSERT_TRUE(fiber.context);
  EXPECT_EQ(fiber.group->order(), 18u);
  EXPECT_FALSE(build(read_spec_file(fixture("gl2-3.json"))).context);
}

TEST(Spec, RoundTrip) {
  for (const auto& entry : fs::directory_iterator(kFixtures)) {
    if (entry.path().extension() != ".json") continue;
    const GroupSpec s = read_spec_file(entry.path().string());
    const std::string canonical = to_json(s);
    EXPECT_EQ(to_json(parse_spec(canonical)), canonical) << entry.path();
    EXPECT_EQ(spec_hash(parse_spec(canonical)), spec_hash(s));
    EXPECT_EQ(spec_hash(s).size(), 64u);
  }
  const auto a = parse_spec(R"({"modulus":3,"kind":"gl2"})");
  const auto b = parse_spec(R"( { "kind" : "gl2", "modulus" : 3 } )");
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_NE(spec_hash(a), spec_hash(parse_spec(R"({"kind":"gl2","modulus":5})")));
}

TEST(Spec, ErrorsCarryPaths) {
  EXPECT_EQ(spec_error_path("{not json"), "/");
  EXPECT_EQ(spec_error_path("[]"), "/");
  EXPECT_EQ(spec_error_path(R"({"modulus":3})"), "/");
  EXPECT_EQ(spec_error_path(R"({"kind":"gl3","modulus":3})"), "/kind");
  EXPECT_EQ(spec_error_path(R"({"kind":"gl2","modulus":1})"), "/modulus");
  EXPECT_EQ(spec_error_path(R"({"kind":"gl2","modulus":"7"})"), "/modulus");
  EXPECT_EQ(spec_error_path(
                R"({"kind":"generators","modulus":5,"matrices":[[[1,0],[0,1]],[[1,2],[2,4]]]})"),
            "/matrices/1");
  EXPECT_EQ(spec_error_path(R"({"kind":"generators","modulus":5,"matrices":[[[1,0],[0]]]})"),
            "/matrices/0/1");
  EXPECT_EQ(spec_error_path(
                R"({"kind":"product","p":2,"q":3,"left":{"kind":"gl2","modulus":2},"right":{"kind":"sl2"}})"),
            "/right");
  EXPECT_EQ(
      spec_error_path(
          R"({"kind":"fiber","quotient_order":2,"left":{"kind":"gl2","modulus":2},"right":{"kind":"generators","modulus":3,"matrices":[[[0,0],[0,0]]]}})"),
      "/right/matrices/0");
}

TEST(Spec, BuildErrors) {
  const auto same = parse_spec(
      R"({"kind":"product","p":3,"q":3,"left":{"kind":"gl2","modulus":3},"right":{"kind":"gl2","modulus":3}})");
  EXPECT_THROW(build(same), SpecError);
  const auto mismatch = parse_spec(
      R"({"kind":"product","p":2,"q":5,"left":{"kind":"gl2","modulus":2},"right":{"kind":"gl2","modulus":3}})");
  EXPECT_THROW(build(mismatch), SpecError);
  EXPECT_THROW(build(parse_spec(R"({"kind":"gl2","modulus":5})"), 100), PreconditionError);
  EXPECT_THROW(build(read_spec_file(fixture("prod-gl2-2-gl2-3.json")), 100), PreconditionError);
  EXPECT_THROW(read_spec_file("/nonexistent/spec.json"), PreconditionError);
}

TEST(Spec, TwoPrimeSplit) {
  EXPECT_EQ(two_prime_split(6), (std::pair<std::uint32_t, std::uint32_t>{2, 3}));
  EXPECT_EQ(two_prime_split(35), (std::pair<std::uint32_t, std::uint32_t>{5, 7}));
  EXPECT_FALSE(two_prime_split(9));
  EXPECT_FALSE(two_prime_split(30));
  EXPECT_FALSE(two_prime_split(7));
}

TEST(Cli, EntSet) {
  const CliRun r = run({"ent-set", "--spec", fixture("prod-gl2-2-gl2-3.json"), "--no-cache"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema_version"], cli::kReportSchemaVersion);
  EXPECT_EQ(j["iso_label_version"], kIsoLabelVersion);
  EXPECT_EQ(j["command"], "ent-set");
  EXPECT_EQ(j["spec_hash"], spec_hash(read_spec_file(fixture("prod-gl2-2-gl2-3.json"))));
  EXPECT_EQ(j["report"]["ent_set"], json({"1", "Z/2", "Z/3", "S3"}));
  EXPECT_EQ(j["cache"], "disabled");
  EXPECT_FALSE(j.contains("seconds"));

  const CliRun direct = run({"ent-set", "--spec", fixture("prod-gl2-2-gl2-3.json"), "--no-cache",
                          "--strategy", "direct"});
  ASSERT_EQ(direct.code, cli::kOk);
  EXPECT_EQ(json::parse(direct.out)["report"]["ent_set"], json({"1", "Z/2", "Z/3", "S3"}));
}

TEST(Cli, ReportsAreDeterministic) {
  for (const char* cmd : {"type", "ent-set", "entangling", "subgroups", "lattice"}) {
    const std::vector<std::string> args = {cmd, "--spec", fixture("fiber-s3-s3-mod10.json"),
                                           "--no-cache"};
    const CliRun a = run(args), b = run(args);
    ASSERT_EQ(a.code, cli::kOk) << cmd << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << cmd;
  }
}

TEST(Cli, TimingIsOptIn) {
  const CliRun r = run({"type", "--spec", fixture("gl2-3.json"), "--timing", "--no-cache"});
  ASSERT_EQ(r.code, cli::kPreconditionFailure) << "gl2(3) has no two-prime split";
  const CliRun t = run({"type", "--spec", fixture("fiber-s3-gl2-3-mod6.json"), "--timing", "--no-cache"});
  ASSERT_EQ(t.code, cli::kOk) << t.err;
  const json j = json::parse(t.out);
  EXPECT_TRUE(j.contains("seconds"));
  EXPECT_EQ(j["entanglement_type"], "Z/2");
}

TEST(Cli, Witness) {
  const CliRun r = run({"witness", "--ell", "3", "--spec", fixture("prod-gl2-2-gl2-3.json"), "--no-cache"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["type"], "Z/3");
  EXPECT_TRUE(j["verified"].get<bool>());
  EXPECT_EQ(j["witness"]["order"], 3);
  EXPECT_EQ(j["witness"]["members"].size(), 3u);

  const CliRun bad = run({"witness", "--ell", "5", "--spec", fixture("prod-gl2-2-gl2-3.json"), "--no-cache"});
  EXPECT_EQ(bad.code, cli::kPreconditionFailure);
  EXPECT_NE(bad.err.find("error"), std::string::npos);
}

TEST(Cli, EntanglingAndClassify) {
  const CliRun e = run({"entangling", "--spec", fixture("fiber-s3-s3-mod10.json"), "--no-cache"});
  ASSERT_EQ(e.code, cli::kOk) << e.err;
  EXPECT_EQ(json::parse(e.out)["subgroups"].size(), 5u);
  const CliRun all = run({"entangling", "--all", "--spec", fixture("fiber-s3-s3-mod10.json"), "--no-cache"});
  EXPECT_EQ(json::parse(all.out)["subgroups"].size(), 17u);

  const CliRun c = run({"classify-2q", "--spec", fixture("prod-z3-gl2-3.json"), "--no-cache"});
  ASSERT_EQ(c.code, cli::kOk) << c.err;
  const json j = json::parse(c.out);
  EXPECT_EQ(j["predicted"], json({"1", "Z/3"}));
  EXPECT_TRUE(j["matches"].get<bool>());
  EXPECT_TRUE(j["z6_absent"].get<bool>());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kPreconditionFailure);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kPreconditionFailure);
  EXPECT_EQ(run({"type"}).code, cli::kPreconditionFailure);
  EXPECT_EQ(run({"type", "--spec", "/nonexistent.json"}).code, cli::kPreconditionFailure);
  EXPECT_EQ(run({"ent-set", "--spec", fixture("gl2-3.json"), "--format", "xml"}).code,
            cli::kPreconditionFailure);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);

  TempDir dir;
  const auto bad = dir.path() / "bad.json";
  std::ofstream(bad) << R"({"kind":"generators","modulus":4,"matrices":[[[2,0],[0,1]]]})";
  const CliRun r = run({"type", "--spec", bad.string()});
  EXPECT_EQ(r.code, cli::kPreconditionFailure);
  EXPECT_NE(r.err.find("/matrices/0"), std::string::npos) << r.err;
}

TEST(Cli, TextFormat) {
  const CliRun r = run({"ent-set", "--spec", fixture("prod-gl2-2-gl2-3.json"), "--no-cache",
                     "--format", "text"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("S3"), std::string::npos);
  EXPECT_THROW(json::parse(r.out), json::parse_error);
}

TEST(Cache, ColdThenWarm) {
  TempDir dir;
  const std::vector<std::string> args = {"subgroups", "--spec", fixture("gl2-3.json"),
                                         "--cache-dir", dir.path().string()};
  const CliRun cold = run(args);
  ASSERT_EQ(cold.code, cli::kOk) << cold.err;
  const CliRun warm = run(args);
  ASSERT_EQ(warm.code, cli::kOk) << warm.err;
  json jc = json::parse(cold.out), jw = json::parse(warm.out);
  EXPECT_EQ(jc["cache"], "miss");
  EXPECT_EQ(jw["cache"], "hit");
  EXPECT_EQ(jc["count"], 16);
  jc.erase("cache");
  jw.erase("cache");
  EXPECT_EQ(jc, jw);
  EXPECT_EQ(run(args).out, warm.out);
}

TEST(Cache, RoundTripAndIntegrity) {
  TempDir dir;
  const auto g = general_linear_group(3);
  LatticeCache cache(dir.path());
  const auto fresh = enumerate_subgroups(g, Conjugacy::kUpToConjugacy);

  EXPECT_EQ(cache.classes(g), fresh);
  EXPECT_EQ(cache.last_outcome(), CacheOutcome::kMiss);
  EXPECT_EQ(cache.classes(g), fresh);
  EXPECT_EQ(cache.last_outcome(), CacheOutcome::kHit);
  EXPECT_EQ(cache.hits(), 1u);
  EXPECT_EQ(cache.misses(), 1u);

  const fs::path path = cache.entry_path(*g);
  ASSERT_TRUE(fs::exists(path));
  const std::string original = slurp(path);

  // Manual edit of the class list: the stored checksum no longer matches.
  json j = json::parse(original);
  j["classes"][1] = j["classes"][2];
  std::ofstream(path) << j.dump();
  CacheOutcome o;
  EXPECT_FALSE(cache.load(g, &o));
  EXPECT_EQ(o, CacheOutcome::kInvalid);
  EXPECT_EQ(cache.classes(g), fresh);
  EXPECT_EQ(cache.last_outcome(), CacheOutcome::kInvalid);
  EXPECT_EQ(slurp(path), original);

  // Older schema version.
  j = json::parse(original);
  j["schema_version"] = kCacheSchemaVersion - 1;
  std::ofstream(path) << j.dump();
  EXPECT_FALSE(cache.load(g, &o));
  EXPECT_EQ(o, CacheOutcome::kInvalid);

  // A non-subgroup with a matching checksum is still rejected.
  j = json::parse(original);
  j["classes"][1] = json({0, 1, 2});
  j["classes_sha256"] = sha256_hex(j["classes"].dump());
  std::ofstream(path) << j.dump();
  EXPECT_FALSE(cache.load(g, &o));

  std::ofstream(path) << "garbage";
  EXPECT_FALSE(cache.load(g, &o));
  EXPECT_EQ(o, CacheOutcome::kInvalid);
  EXPECT_EQ(cache.classes(g), fresh);
  EXPECT_EQ(slurp(path), original);

  // Nothing stray left behind by the atomic writes.
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir.path())) {
    ++files;
    EXPECT_EQ(e.path().extension(), ".json");
  }
  EXPECT_EQ(files, 1u);
}

TEST(Cache, EntriesAreKeyedByContent) {
  TempDir dir;
  LatticeCache cache(dir.path());
  EXPECT_EQ(cache.entry_path(*general_linear_group(2)), cache.entry_path(*general_linear_group(2)));
  EXPECT_NE(cache.entry_path(*general_linear_group(2)), cache.entry_path(*special_linear_group(3)));
  EXPECT_NE(cache.entry_path(*cyclic_group(6)), cache.entry_path(*general_linear_group(2)));
  EXPECT_NE(cache.entry_path(*general_linear_group(2)).filename().string().find("lattice-v1-"),
            std::string::npos);
}

TEST(Cache, DirectoryFromEnvironment) {
  const char* old = std::getenv(kCacheDirEnv);
  const std::string saved = old ? old : "";
  ::setenv(kCacheDirEnv, "/tmp/galent-env-check", 1);
  EXPECT_EQ(LatticeCache::default_directory(), fs::path("/tmp/galent-env-check"));
  ::unsetenv(kCacheDirEnv);
  ::setenv("XDG_CACHE_HOME", "/tmp/xdg", 1);
  EXPECT_EQ(LatticeCache::default_directory(), fs::path("/tmp/xdg/galent"));
  if (old) ::setenv(kCacheDirEnv, saved.c_str(), 1);
}

// Minimal structural check of DOT output: one digraph, balanced braces,
// every edge endpoint declared as a node.
void expect_valid_dot(const std::string& dot, std::size_t nodes, std::size_t edges) {
  ASSERT_EQ(dot.rfind("digraph ", 0), 0u);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '{'), std::count(dot.begin(), dot.end(), '}'));
  EXPECT_EQ(dot.find_last_not_of("\n"), dot.rfind('}'));
  std::set<std::string> declared;
  const std::regex node(R"(^\s*(n\d+)\s*\[label=\"[^\"]*\"\];?\s*$)");
  const std::regex edge(R"(^\s*(n\d+)\s*->\s*(n\d+)\s*;?\s*$)");
  std::istringstream in(dot);
  std::string line;
  std::size_t seen_edges = 0;
  std::vector<std::pair<std::string, std::string>> pending;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_match(line, m, node)) declared.insert(m[1]);
    if (std::regex_match(line, m, edge)) {
      ++seen_edges;
      pending.emplace_back(m[1], m[2]);
    }
  }
  EXPECT_EQ(declared.size(), nodes);
  EXPECT_EQ(seen_edges, edges);
  for (const auto& [a, b] : pending) {
    EXPECT_TRUE(declared.count(a)) << a;
    EXPECT_TRUE(declared.count(b)) << b;
  }
}

TEST(Lattice, S3) {
  const auto g = general_linear_group(2);
  const auto lat = build_lattice(enumerate_subgroups(g, Conjugacy::kUpToConjugacy));
  ASSERT_EQ(lat.nodes.size(), 4u);
  // 1 < Z/2, 1 < Z/3, Z/2 < S3, Z/3 < S3.
  EXPECT_EQ(lat.edges.size(), 4u);
  EXPECT_EQ(lat.nodes[1].class_size, 3u);
  EXPECT_EQ(lat.nodes[3].iso.label, "S3");
  expect_valid_dot(to_dot(lat), 4, 4);
}

TEST(Lattice, CliWritesDotFile) {
  TempDir dir;
  const auto out = dir.path() / "out.dot";
  const CliRun r = run({"lattice", "--spec", fixture("fiber-s3-s3-mod10.json"), "--no-cache",
                     "--dot", out.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = json::parse(r.out);
  ASSERT_TRUE(fs::exists(out));
  const std::string dot = slurp(out);
  expect_valid_dot(dot, j["nodes"].get<std::size_t>(), j["edges"].get<std::size_t>());
  EXPECT_NE(dot.find("Z/2"), std::string::npos);
}

}  // namespace
}  // namespace galent
