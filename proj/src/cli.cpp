#include "strucnet/cli.hpp"

#include "strucnet/cases.hpp"
#include "strucnet/classify.hpp"
#include "strucnet/cover.hpp"
#include "strucnet/errors.hpp"
#include "strucnet/extend.hpp"
#include "strucnet/json_io.hpp"
#include "strucnet/network.hpp"
#include "strucnet/verify.hpp"
#include "strucnet/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <variant>

namespace strucnet {

namespace {

struct CliFailure {
  int code;
  std::string message;
};

std::string read_document(const std::string& path, const std::string& stdin_text) {
  if (path == "-") return stdin_text;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{kExitBadInput, "cannot open input file: " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit_text(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw CliFailure{kExitBadInput, "cannot open output file: " + out_path};
  file << text;
}

Json envelope(const char* command, std::uint64_t seed, const std::string& digest) {
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", command},
              {"seed", seed},
              {"input_digest", digest}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

SystemGraph graph_of(const std::variant<StructuredNetwork, ExtendedNetwork>& parsed) {
  if (std::holds_alternative<StructuredNetwork>(parsed))
    return system_graph(std::get<StructuredNetwork>(parsed));
  return expanded_graph(std::get<ExtendedNetwork>(parsed));
}

/// verify accepts plain documents and extend reports (whose "network" key
/// carries the rewritten document).
Json unwrap_document(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ValidationError("input is not valid JSON");
  if (doc.is_object() && doc.contains("network")) return doc.at("network");
  return doc;
}

ExtensionPlan identity_plan(const StructuredNetwork& net, const Classification& c) {
  ExtensionPlan plan;
  plan.result = identity_extension(net);
  plan.s_first_order = 0;
  plan.s_hat = 0;
  plan.delta = 0;
  if (c.dimension_witness) {
    plan.certificate = c.dimension_witness;
    plan.base_cover = *c.dimension_witness;
  }
  return plan;
}

struct CommandResult {
  Json payload;          // merged over the envelope
  std::string summary;   // one line to stderr
  bool negative = false; // drives --expect-controllable
};

CommandResult run_analyze(const std::variant<StructuredNetwork, ExtendedNetwork>& parsed) {
  const SystemGraph g = graph_of(parsed);
  const Classification c = classify(g);
  CommandResult r;
  r.payload = to_json(c);
  r.payload["accessible"] = c.inaccessible.empty();
  r.payload["structurally_controllable"] = c.label == ClassLabel::StructurallyControllable;
  r.negative = c.label != ClassLabel::StructurallyControllable;
  std::ostringstream s;
  s << "label=" << to_string(c.label) << " n=" << c.num_states << " d_c=" << c.d_c;
  r.summary = s.str();
  return r;
}

CommandResult run_classify(const std::variant<StructuredNetwork, ExtendedNetwork>& parsed) {
  const Classification c = classify(graph_of(parsed));
  CommandResult r;
  r.payload["label"] = to_string(c.label);
  if (c.witness) r.payload["witness"] = to_json(*c.witness);
  r.negative = c.label != ClassLabel::StructurallyControllable;
  r.summary = "label=" + to_string(c.label);
  return r;
}

CommandResult run_extend(const std::variant<StructuredNetwork, ExtendedNetwork>& parsed,
                         const std::string& mode, const std::string& cover_path) {
  if (!std::holds_alternative<StructuredNetwork>(parsed))
    throw ValidationError("extend expects a first-order network document");
  const StructuredNetwork& net = std::get<StructuredNetwork>(parsed);
  std::optional<PathCycleCover> cover;
  if (!cover_path.empty()) {
    std::ifstream in(cover_path, std::ios::binary);
    if (!in) throw CliFailure{kExitBadInput, "cannot open cover file: " + cover_path};
    Json doc = Json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ValidationError("cover file is not valid JSON");
    cover = cover_from_json(doc);
  }

  ExtensionPlan plan;
  if (mode == "x") {
    if (cover) {
      plan = extend_x_network(net, *cover);
    } else {
      const Classification c = classify(system_graph(net));
      if (c.label == ClassLabel::StructurallyControllable)
        plan = identity_plan(net, c);
      else if (c.label == ClassLabel::X && c.witness)
        plan = extend_x_network(net, *c.witness);
      else
        throw ValidationError("not an X-network (label " + to_string(c.label) +
                              "); use --mode general");
    }
  } else {
    const GenericDimensionReport dim = generic_dimension(system_graph(net));
    if (dim.structurally_controllable && !cover) {
      Classification c;
      c.dimension_witness = dim.witness;
      plan = identity_plan(net, c);
    } else {
      plan = extend_general(net, cover);
    }
  }

  CommandResult r;
  r.payload = to_json(plan);
  std::ostringstream s;
  s << "modified " << plan.s_hat << " subsystem(s), total order "
    << plan.result.total_order() << ", delta=" << plan.delta;
  r.summary = s.str();
  return r;
}

CommandResult run_bounds(const std::variant<StructuredNetwork, ExtendedNetwork>& parsed,
                         int n_hat_max) {
  if (!std::holds_alternative<StructuredNetwork>(parsed))
    throw ValidationError("bounds expects a first-order network document");
  const StructuredNetwork& net = std::get<StructuredNetwork>(parsed);
  const HeterogeneityBounds b = heterogeneity_bounds(net, n_hat_max);
  CommandResult r;
  r.payload = Json{{"lower", b.lower},
                   {"upper", b.upper},
                   {"n_hat_max", b.n_hat_max},
                   {"z_size", b.z_size},
                   {"n", net.n}};
  std::ostringstream s;
  s << b.lower << " <= S_hat_min <= " << b.upper << " (orders capped at " << b.n_hat_max << ")";
  r.summary = s.str();
  return r;
}

CommandResult run_verify(const std::variant<StructuredNetwork, ExtendedNetwork>& parsed,
                         const std::string& what, const std::string& field, int trials,
                         std::uint64_t seed, int jobs) {
  const ExtendedNetwork ext = std::holds_alternative<ExtendedNetwork>(parsed)
                                  ? std::get<ExtendedNetwork>(parsed)
                                  : identity_extension(std::get<StructuredNetwork>(parsed));
  CommandResult r;
  if (what == "structural" || what == "output") {
    if (field != "prime")
      throw CliFailure{kExitUsage, "rank verification runs over the prime field; drop --field"};
    const RankVerification rv = what == "structural"
                                    ? generic_rank_controllability(ext, trials, seed, jobs)
                                    : generic_rank_output_controllability(ext, trials, seed, jobs);
    r.payload = to_json(rv);
    r.payload["what"] = what;
    r.payload["field"] = "prime";
    r.payload["n"] = ext.base.n;
    r.payload["n_hat"] = ext.total_order();
    r.negative = !rv.full_rank;
    std::ostringstream s;
    s << what << " rank " << rv.rank << "/" << rv.target << " over " << trials << " trial(s): "
      << (rv.full_rank ? "full" : "deficient");
    r.summary = s.str();
    return r;
  }
  // what == "pbh"
  if (field == "prime")
    throw CliFailure{kExitUsage, "the eigenvector test needs --field rational or float"};
  const FieldKind kind = field == "float" ? FieldKind::Float64 : FieldKind::Rational;
  const RealizationSample sample = sample_realization(ext, kind, seed);
  const PbhReport report = pbh_output_test(
      sample.A, sample.B, sample.C,
      kind == FieldKind::Float64 ? PbhMode::Float64 : PbhMode::Rational);
  r.payload = to_json(report);
  r.payload["what"] = "pbh";
  r.payload["field"] = field;
  r.negative = report.verdict != PbhVerdict::OutputControllable;
  r.summary = "pbh verdict: " + to_string(report.verdict) + " via " + to_string(report.which_test);
  return r;
}

int run_gen(const std::string& family_name, int height, bool extended,
            const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::string name = family_name;
  if (name == "tree") name = "binary_tree";
  if (name == "bif") name = "bifurcation";
  const auto family = family_from_string(name);
  if (!family) {
    err << "error: unknown family \"" << family_name << "\"\n";
    return kExitUsage;
  }
  const bool parametric =
      *family == CaseFamily::BinaryTree || *family == CaseFamily::Bifurcation;
  if (parametric && height < 0) {
    err << "error: " << name << " needs --height\n";
    return kExitUsage;
  }
  CaseStudyId id{*family, parametric ? height : 0, extended};
  Json doc;
  int n = 0, total = 0;
  try {
    const auto made = generate(id);
    if (std::holds_alternative<StructuredNetwork>(made)) {
      const auto& net = std::get<StructuredNetwork>(made);
      doc = to_json(net);
      n = net.n;
      total = net.n;
    } else {
      const auto& ext = std::get<ExtendedNetwork>(made);
      doc = to_json(ext);
      n = ext.base.n;
      total = ext.total_order();
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  emit_text(dump(doc), out_path, out);
  err << "generated " << name << (parametric ? " h=" + std::to_string(height) : "") << " (n=" << n
      << ", total order " << total << ")\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::string& stdin_text) {
  CLI::App app{"structural controllability analysis and local-dynamics extension synthesis"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  bool show_schema = false;
  app.add_flag("--schema", show_schema, "print the JSON schema catalog and exit");

  std::string input_path, out_path, cover_path;
  std::string mode = "general", what = "output", field;
  std::string family;
  std::uint64_t seed = 0;
  int trials = 5, jobs = 1, n_hat_max = 2, height = -1;
  bool extended = false, expect_controllable = false;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input_path, "network JSON document (\"-\" for stdin)")->required();
    cmd->add_option("--out", out_path, "write the report to a file instead of stdout");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "accessibility, generic dimension, class");
  add_input(analyze);
  analyze->add_flag("--expect-controllable", expect_controllable,
                    "exit 1 unless structurally controllable");

  CLI::App* classify_cmd = app.add_subcommand("classify", "class label and witness cover only");
  add_input(classify_cmd);

  CLI::App* extend = app.add_subcommand("extend", "synthesize a higher-order extension");
  add_input(extend);
  extend->add_option("--mode", mode, "x (shared-node rewrite) or general (two-step)")
      ->check(CLI::IsMember({"x", "general"}));
  extend->add_option("--cover", cover_path, "stem/cycle cover JSON to extend from");

  CLI::App* bounds = app.add_subcommand("bounds", "S_hat_min range for a class-Y network");
  add_input(bounds);
  bounds->add_option("--nmax", n_hat_max, "largest allowed subsystem order")
      ->check(CLI::PositiveNumber);

  CLI::App* gen = app.add_subcommand("gen", "emit a pinned case-study network document");
  gen->add_option("family", family,
                  "binary_tree|bifurcation|fig1a|fig2a|fig2b|fig2c|fig2d|fig3a|fig3b|fig3c")
      ->required();
  gen->add_option("--height", height, "height for the parametric families");
  gen->add_flag("--extended", extended, "emit the pinned extension instead of the base network");
  gen->add_option("--out", out_path, "write the document to a file instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "numeric verification of a (extended) network");
  add_input(verify);
  verify->add_option("--what", what, "structural | output | pbh")
      ->check(CLI::IsMember({"structural", "output", "pbh"}));
  verify->add_option("--field", field, "prime (ranks) | rational | float (pbh)")
      ->check(CLI::IsMember({"prime", "rational", "float"}));
  verify->add_option("--trials", trials, "independent realizations")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "root seed for the realization draws");
  verify->add_option("--jobs", jobs, "worker threads for the trials")->check(CLI::PositiveNumber);
  verify->add_flag("--expect-controllable", expect_controllable,
                   "exit 1 unless the verification certifies controllability");

  CLI::App* export_dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of the graph");
  add_input(export_dot_cmd);

  app.require_subcommand(0, 1);

  std::vector<const char*> argv;
  argv.push_back("strucnet");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolName << " " << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (show_schema) {
    out << dump(schema_catalog());
    return kExitOk;
  }
  if (app.get_subcommands().empty()) {
    err << "error: a subcommand is required (see --help)\n";
    return kExitUsage;
  }

  if (gen->parsed()) return run_gen(family, height, extended, out_path, out, err);

  try {
    const std::string text = read_document(input_path, stdin_text);
    const std::string digest = fnv1a_hex(text);

    CommandResult result;
    const char* command = nullptr;
    if (analyze->parsed()) {
      command = "analyze";
      result = run_analyze(parse_network_text(text));
    } else if (classify_cmd->parsed()) {
      command = "classify";
      result = run_classify(parse_network_text(text));
    } else if (extend->parsed()) {
      command = "extend";
      result = run_extend(parse_network_text(text), mode, cover_path);
    } else if (bounds->parsed()) {
      command = "bounds";
      result = run_bounds(parse_network_text(text), n_hat_max);
    } else if (verify->parsed()) {
      if (field.empty()) field = what == "pbh" ? "rational" : "prime";
      command = "verify";
      const Json doc = unwrap_document(text);
      result = run_verify(any_network_from_json(doc), what, field, trials, seed, jobs);
    } else if (export_dot_cmd->parsed()) {
      const std::string dot = export_dot(graph_of(parse_network_text(text)));
      emit_text(dot, out_path, out);
      err << "rendered graph to DOT\n";
      return kExitOk;
    } else {
      err << "error: unknown subcommand\n";
      return kExitUsage;
    }

    Json report = envelope(command, seed, digest);
    report.update(result.payload);
    emit_text(dump(report), out_path, out);
    err << result.summary << "\n";
    if (expect_controllable && result.negative) return kExitNegative;
    return kExitOk;
  } catch (const CliFailure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const SizeGuardError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSizeGuard;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace strucnet
