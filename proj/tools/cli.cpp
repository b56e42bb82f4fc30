#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "galent/acceptance.hpp"
#include "galent/content_hash.hpp"
#include "galent/entangle.hpp"
#include "galent/error.hpp"
#include "galent/lattice_cache.hpp"
#include "galent/report.hpp"
#include "galent/spec_io.hpp"

namespace galent::cli {
namespace {

using json = nlohmann::ordered_json;
using ordered_json = json;

struct Options {
  std::string spec_path;
  std::string format = "json";
  std::string strategy = "auto";
  std::string dot_path;
  std::string cache_dir;
  std::uint32_t ell = 0;
  bool all = false;
  bool no_cache = false;
  bool stretch = false;
  bool timing = false;
};

// Shared state of one invocation.
class Session {
 public:
  Session(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  void load_spec() {
    if (opt_.spec_path.empty()) throw PreconditionError("--spec is required");
    spec_ = read_spec_file(opt_.spec_path);
    built_ = build(*spec_);
  }

  const GroupPtr& group() const { return built_.group; }

  const EntContext& context() const {
    if (!built_.context) {
      throw PreconditionError(
          "this group has no mod-p / mod-q split (needs modulus pq, a product or a fiber)");
    }
    return *built_.context;
  }

  SubgroupEnumerator enumerator() {
    if (opt_.no_cache) return default_enumerator();
    if (!cache_) {
      cache_ = std::make_unique<LatticeCache>(
          opt_.cache_dir.empty() ? LatticeCache::default_directory()
                                : std::filesystem::path(opt_.cache_dir));
    }
    return cache_->enumerator();
  }

  std::string cache_state() const {
    if (opt_.no_cache) return "disabled";
    if (!cache_ || cache_->hits() + cache_->misses() == 0) return "unused";
    if (cache_->misses() == 0) return "hit";
    if (cache_->hits() == 0) return "miss";
    return "partial";
  }

  ordered_json header(const std::string& command) const {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["iso_label_version"] = kIsoLabelVersion;
    j["command"] = command;
    if (spec_) j["spec_hash"] = spec_hash(*spec_);
    return j;
  }

  void emit(ordered_json j, const std::string& text) {
    j["cache"] = cache_state();
    if (opt_.timing) {
      j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }
    if (opt_.format == "text") {
      out_ << text;
      if (opt_.timing) out_ << "time: " << j["seconds"].get<double>() << "s\n";
    } else {
      out_ << j.dump(2) << '\n';
    }
  }

 private:
  const Options& opt_;
  std::ostream& out_;
  std::optional<GroupSpec> spec_;
  BuiltSpec built_;
  std::unique_ptr<LatticeCache> cache_;
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

ordered_json group_json(const FiniteGroup& g) {
  ordered_json j;
  j["order"] = g.order();
  if (g.is_matrix_group()) j["modulus"] = g.modulus();
  j["isomorphism_type"] = g.order() <= kIdentifyCap ? identify(g).label : fingerprint(g).to_string();
  j["content_hash"] = group_content_hash(g);
  return j;
}

ordered_json context_json(const EntContext& ctx) {
  ordered_json j;
  if (ctx.p) {
    j["p"] = ctx.p;
    j["q"] = ctx.q;
  }
  j["order"] = ctx.order();
  j["kernel_p_order"] = ctx.kernel_p.size();
  j["kernel_q_order"] = ctx.kernel_q.size();
  j["join_order"] = ctx.join.size();
  j["image_p_order"] = ctx.image_p_order();
  j["image_q_order"] = ctx.image_q_order();
  j["d"] = d_value(ctx);
  return j;
}

ordered_json subgroup_json(const Subgroup& h) {
  ordered_json j;
  j["order"] = h.size();
  json gens = json::array();
  for (Elem x : generating_set(h)) gens.push_back(h.parent()->element_label(x));
  j["generators"] = std::move(gens);
  j["members"] = h.members();
  return j;
}

std::string labels_text(const std::vector<std::string>& labels) {
  std::string s = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? ", " : "") + labels[i];
  return s + "}";
}

Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return Strategy::kAuto;
  if (s == "direct") return Strategy::kDirect;
  if (s == "goursat") return Strategy::kGoursat;
  throw PreconditionError("unknown strategy " + s);
}

int cmd_type(Session& s) {
  s.load_spec();
  const EntContext& ctx = s.context();
  const IsoClass t = entanglement_type(ctx);
  ordered_json j = s.header("type");
  j["group"] = group_json(*s.group());
  j["context"] = context_json(ctx);
  j["entanglement_type"] = t.label;
  std::ostringstream text;
  text << "|G| = " << ctx.order() << ", |im_p| = " << ctx.image_p_order()
       << ", |im_q| = " << ctx.image_q_order() << ", d = " << d_value(ctx) << "\n"
       << "entanglement type: " << t.label << "\n";
  s.emit(std::move(j), text.str());
  return kOk;
}

ordered_json report_json(const EntReport& r) {
  ordered_json j;
  j["strategy"] = r.strategy;
  j["group_order"] = r.group_order;
  j["image_p_order"] = r.image_p_order;
  j["image_q_order"] = r.image_q_order;
  j["d"] = r.d;
  j["entanglement_type"] = r.type.label;
  j["ent_set"] = r.labels();
  json entries = json::array();
  for (const auto& e : r.entries) {
    ordered_json x;
    x["type"] = e.type.label;
    x["type_order"] = e.type.order;
    x["witness_order"] = e.witness_order;
    if (e.witness.parent()) x["witness"] = subgroup_json(e.witness);
    if (e.left) {
      x["left_section"] = {{"p_order", e.left->p.size()}, {"k_order", e.left->k.size()}};
      x["right_section"] = {{"p_order", e.right->p.size()}, {"k_order", e.right->k.size()}};
    }
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  return j;
}

int cmd_ent_set(Session& s, const Options& opt) {
  s.load_spec();
  const EntReport r = ent_set(s.context(), parse_strategy(opt.strategy), s.enumerator());
  ordered_json j = s.header("ent-set");
  j["report"] = report_json(r);
  std::ostringstream text;
  text << "strategy " << r.strategy << ", |G| = " << r.group_order << ", d = " << r.d << "\n"
       << "Ent = " << labels_text(r.labels()) << "\n";
  for (const auto& e : r.entries) text << "  " << e.type.label << ": witness of order " << e.witness_order << "\n";
  s.emit(std::move(j), text.str());
  return kOk;
}

int cmd_witness(Session& s, const Options& opt) {
  if (opt.ell == 0) throw PreconditionError("--ell is required");
  s.load_spec();
  const EntContext& ctx = s.context();
  const Subgroup h = cyclic_witness(ctx, opt.ell);
  const IsoClass t = base_change_type(ctx, h);
  ordered_json j = s.header("witness");
  j["ell"] = opt.ell;
  j["context"] = context_json(ctx);
  j["witness"] = subgroup_json(h);
  j["type"] = t.label;
  j["verified"] = t.label == "Z/" + std::to_string(opt.ell);
  std::ostringstream text;
  text << "witness of order " << h.size() << " with type " << t.label << "\n";
  for (Elem x : generating_set(h)) text << "  generator " << ctx.group->element_label(x) << "\n";
  s.emit(std::move(j), text.str());
  return kOk;
}

int cmd_entangling(Session& s, const Options& opt) {
  s.load_spec();
  const EntContext& ctx = s.context();
  const auto found = entangling_subgroups(ctx.kernel_p, ctx.kernel_q,
                                          opt.all ? Conjugacy::kAll : Conjugacy::kUpToConjugacy);
  ordered_json j = s.header("entangling");
  j["up_to_conjugacy"] = !opt.all;
  json list = json::array();
  std::ostringstream text;
  text << found.size() << " entangling subgroups" << (opt.all ? "" : " up to conjugacy") << "\n";
  for (const auto& e : found) {
    ordered_json x = subgroup_json(e.h);
    x["meet_order"] = e.meet_1;
    if (e.type) x["type"] = e.type->label;
    list.push_back(std::move(x));
    text << "  order " << e.h.size() << ", |H ∩ G_i| = " << e.meet_1
         << (e.type ? ", type " + e.type->label : std::string()) << "\n";
  }
  j["subgroups"] = std::move(list);
  s.emit(std::move(j), text.str());
  return kOk;
}

int cmd_classify_2q(Session& s) {
  s.load_spec();
  const Classification2q c = classify_2q(s.context(), true, s.enumerator());
  ordered_json j = s.header("classify-2q");
  j["q"] = c.q;
  j["image_2_order"] = c.image_2_order;
  j["image_q_is_gl2"] = c.image_q_is_gl2;
  j["untangled"] = c.untangled;
  j["hypotheses_hold"] = c.hypotheses_hold;
  j["predicted"] = c.predicted;
  j["computed"] = *c.computed;
  j["matches"] = c.matches;
  j["within_bound"] = c.within_bound;
  j["z6_absent"] = c.z6_absent;
  std::ostringstream text;
  text << "predicted " << labels_text(c.predicted) << ", computed " << labels_text(*c.computed)
       << (c.matches ? " (consistent)" : " (INCONSISTENT)") << "\n";
  s.emit(std::move(j), text.str());
  return c.matches && c.z6_absent ? kOk : kInternalFailure;
}

int cmd_subgroups(Session& s, const Options& opt) {
  s.load_spec();
  const GroupPtr& g = s.group();
  const auto subs =
      opt.all ? enumerate_subgroups(g, Conjugacy::kAll) : s.enumerator()(g);
  ordered_json j = s.header("subgroups");
  j["group"] = group_json(*g);
  j["up_to_conjugacy"] = !opt.all;
  j["count"] = subs.size();
  IsoClassifier classifier;
  json list = json::array();
  std::ostringstream text;
  text << subs.size() << " subgroups" << (opt.all ? "" : " up to conjugacy") << " of a group of order "
       << g->order() << "\n";
  for (const Subgroup& h : subs) {
    ordered_json x;
    x["order"] = h.size();
    const std::string iso = h.size() <= kIdentifyCap ? classifier.identify(*subgroup_as_group(h)).label
                                                     : std::string("?");
    x["isomorphism_type"] = iso;
    x["members"] = h.members();
    list.push_back(std::move(x));
    text << "  order " << h.size() << "  " << iso << "\n";
  }
  j["subgroups"] = std::move(list);
  s.emit(std::move(j), text.str());
  return kOk;
}

int cmd_lattice(Session& s, const Options& opt) {
  s.load_spec();
  const GroupPtr& g = s.group();
  const auto classes = s.enumerator()(g);
  const EntContext* ctx = nullptr;
  std::optional<EntContext> holder;
  try {
    holder = s.context();
    ctx = &*holder;
  } catch (const PreconditionError&) {
  }
  const Lattice lat = build_lattice(classes, ctx);
  const std::string dot = to_dot(lat);
  if (!opt.dot_path.empty()) {
    std::ofstream f(opt.dot_path);
    if (!f) throw PreconditionError("cannot write " + opt.dot_path);
    f << dot;
  }
  ordered_json j = s.header("lattice");
  j["group"] = group_json(*g);
  j["nodes"] = lat.nodes.size();
  j["edges"] = lat.edges.size();
  if (!opt.dot_path.empty()) j["dot_file"] = opt.dot_path;
  else j["dot"] = dot;
  std::ostringstream text;
  text << lat.nodes.size() << " classes, " << lat.edges.size() << " maximal containments\n";
  if (opt.dot_path.empty()) text << dot;
  s.emit(std::move(j), text.str());
  return kOk;
}

int cmd_verify_paper(Session& s, const Options& opt, std::ostream& out) {
  AcceptanceOptions a;
  a.stretch = opt.stretch;
  if (!opt.no_cache) a.enumerate = s.enumerator();
  bool all = true;
  json results = json::array();
  run_acceptance(a, [&](const CriterionResult& r) {
    all = all && r.passed;
    if (opt.format == "text") out << format_result(r) << std::endl;
    ordered_json x;
    x["id"] = r.id;
    x["name"] = r.name;
    x["passed"] = r.passed;
    if (r.budget_seconds > 0) x["budget_seconds"] = r.budget_seconds;
    if (opt.timing) x["seconds"] = r.seconds;
    x["detail"] = r.detail;
    results.push_back(std::move(x));
  });
  if (opt.format == "text") {
    out << (all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << "\n";
  } else {
    ordered_json j = s.header("verify-paper");
    j["passed"] = all;
    j["criteria"] = std::move(results);
    out << j.dump(2) << '\n';
  }
  return all ? kOk : kInternalFailure;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement types of mod-pq matrix groups", "galent"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    auto* spec = sub->add_option("--spec", opt.spec_path, "JSON group specification");
    if (needs_spec) spec->required()->check(CLI::ExistingFile);
    sub->add_option("--format", opt.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--no-cache", opt.no_cache, "do not read or write the lattice cache");
    sub->add_option("--cache-dir", opt.cache_dir, "lattice cache directory");
    sub->add_flag("--timing", opt.timing, "include wall-clock seconds in the report");
  };

  auto* type = app.add_subcommand("type", "entanglement type of G");
  add_common(type, true);
  auto* ent = app.add_subcommand("ent-set", "all types reachable over subgroups of G");
  add_common(ent, true);
  ent->add_option("--strategy", opt.strategy, "auto, direct or goursat")
      ->check(CLI::IsMember({"auto", "direct", "goursat"}));
  auto* witness = app.add_subcommand("witness", "subgroup with cyclic type Z/ell");
  add_common(witness, true);
  witness->add_option("--ell", opt.ell, "prime dividing d")->required();
  auto* entangling = app.add_subcommand("entangling", "subgroups meeting both kernels equally");
  add_common(entangling, true);
  entangling->add_flag("--all", opt.all, "every subgroup rather than one per orbit");
  auto* classify = app.add_subcommand("classify-2q", "predicted and computed Ent set for p = 2");
  add_common(classify, true);
  auto* subgroups = app.add_subcommand("subgroups", "subgroup lattice listing");
  add_common(subgroups, true);
  subgroups->add_flag("--all", opt.all, "every subgroup rather than one per class");
  auto* lattice = app.add_subcommand("lattice", "subgroup lattice as a DOT digraph");
  add_common(lattice, true);
  lattice->add_option("--dot", opt.dot_path, "write the DOT graph to this file");
  auto* verify = app.add_subcommand("verify-paper", "run the acceptance matrix");
  add_common(verify, false);
  verify->add_flag("--stretch", opt.stretch, "include the large GL2(3) x GL2(q) targets");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kPreconditionFailure;
  }

  Session session(opt, out);
  try {
    if (*type) return cmd_type(session);
    if (*ent) return cmd_ent_set(session, opt);
    if (*witness) return cmd_witness(session, opt);
    if (*entangling) return cmd_entangling(session, opt);
    if (*classify) return cmd_classify_2q(session);
    if (*subgroups) return cmd_subgroups(session, opt);
    if (*lattice) return cmd_lattice(session, opt);
    if (*verify) return cmd_verify_paper(session, opt, out);
  } catch (const SpecError& e) {
    err << "error: spec " << e.what() << "\n";
    return kPreconditionFailure;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kPreconditionFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalFailure;
  }
  return kInternalFailure;
}

}  // namespace galent::cli
