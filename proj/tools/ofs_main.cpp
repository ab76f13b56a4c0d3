// ofs: command-line front end.
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ofs/analysis.hpp"
#include "ofs/automaton.hpp"
#include "ofs/corpus.hpp"
#include "ofs/errors.hpp"
#include "ofs/generalise.hpp"
#include "ofs/instantiate.hpp"
#include "ofs/model_io.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw ofs::InternalError("SHA-256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

struct Globals {
  std::string alphabet;
  std::string round;
  bool require_stress = true;
  bool whitespace = false;
  std::string format = "text";
  std::string manifest;
};

// Records inputs, parameters and outputs for --manifest.
class Run {
 public:
  Run(std::string command, const Globals& g) : g_(g) {
    doc_["tool"] = "ofs";
    doc_["version"] = kVersion;
    doc_["command"] = std::move(command);
    doc_["parameters"] = nlohmann::json::object();
    doc_["inputs"] = nlohmann::json::array();
    doc_["outputs"] = nlohmann::json::array();
  }

  std::string read(const std::string& path) {
    std::string text = ofs::read_text_file(path);
    doc_["inputs"].push_back({{"path", path}, {"sha256", sha256_hex(text)}});
    return text;
  }

  template <typename T>
  void param(const std::string& key, const T& value) {
    doc_["parameters"][key] = value;
  }

  // Writes to `path`, or stdout when empty.
  void write(const std::string& path, const std::string& text, const std::string& role = "output") {
    if (path.empty() || path == "-") {
      std::cout << text;
    } else {
      ofs::write_text_file(path, text);
    }
    doc_["outputs"].push_back({{"role", role}, {"path", path.empty() ? "-" : path}, {"sha256", sha256_hex(text)}});
  }

  void finish() {
    if (!g_.manifest.empty()) ofs::write_text_file(g_.manifest, doc_.dump(2) + "\n");
  }

 private:
  const Globals& g_;
  nlohmann::json doc_;
};

int sim_digits(const Globals& g) {
  if (g.round.empty()) return 4;
  const std::string prefix = "sim:";
  if (g.round.rfind(prefix, 0) != 0) throw UsageError("--round expects sim:<digits>, got '" + g.round + "'");
  const std::string digits = g.round.substr(prefix.size());
  if (digits.empty() || digits.size() > 2 || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("--round expects sim:<digits>, got '" + g.round + "'");
  }
  return std::stoi(digits);
}

ofs::Rational parse_tau(const std::string& text) {
  ofs::Rational tau;
  try {
    tau = ofs::parse_rational(text);
  } catch (const ofs::FormatError& e) {
    throw UsageError(e.what());
  }
  if (tau <= ofs::Rational(0) || tau > ofs::Rational(1)) throw UsageError("tau must lie in (0, 1], got " + text);
  return tau;
}

void require_format(const Globals& g, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (g.format == f) return;
  }
  throw UsageError("--format " + g.format + " is not supported by this command");
}

ofs::AlphabetSpec need_alphabet(Run& run, const Globals& g) {
  if (g.alphabet.empty()) throw UsageError("--alphabet is required");
  return ofs::parse_alphabet(run.read(g.alphabet));
}

ofs::IngestOptions ingest_options(const Globals& g) {
  return {g.require_stress, g.whitespace ? ofs::TokenizeMode::kWhitespace : ofs::TokenizeMode::kLongestMatch};
}

ofs::Model read_model(Run& run, const std::string& path) { return ofs::parse_model(run.read(path)); }

std::string size_summary(const ofs::Model& m) {
  std::string out;
  if (m.is_empty()) return "model is empty\n";
  for (const auto& r : m.levels()[0]) out += r.lhs.label + "\t" + std::to_string(r.set().size()) + "\n";
  return out;
}

// Parses "a:b" or "a" into an inclusive range.
std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  auto num = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("expected a count or range like 1:3, got '" + text + "'");
    }
    return std::stoul(s);
  };
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    auto v = num(text);
    return {v, v};
  }
  auto lo = num(text.substr(0, colon));
  auto hi = num(text.substr(colon + 1));
  if (lo > hi) throw UsageError("empty range '" + text + "'");
  return {lo, hi};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Object-based finite-state phonotactic modelling"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Globals g;
  app.add_option("--alphabet", g.alphabet, "Alphabet/class file");
  app.add_option("--round", g.round, "Display rounding, e.g. sim:2");
  app.add_flag("--require-stress,!--no-require-stress", g.require_stress,
               "Reject words without exactly one stress marker (default on)");
  app.add_flag("--whitespace", g.whitespace, "Tokens are whitespace-separated");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "tsv", "dot"}));
  app.add_option("--manifest", g.manifest, "Write a JSON run manifest");

  std::string corpus_path, proto_path, model_path, out_path, rejects_path, tau_text, grid_text, k_text = "2";
  std::vector<std::string> word_args;
  bool distinct = false;
  std::size_t max_k = 1;
  std::size_t limit = 0;

  auto* ingest_cmd = app.add_subcommand("ingest", "Tokenize and filter a word list");
  ingest_cmd->add_option("corpus", corpus_path)->required();
  ingest_cmd->add_option("-o,--out", out_path, "Normalized corpus (default stdout)");
  ingest_cmd->add_option("--rejects", rejects_path, "Reject log TSV (default stderr)");

  auto* inst_cmd = app.add_subcommand("instantiate", "Instantiate a prototype from a corpus");
  inst_cmd->add_option("prototype", proto_path)->required();
  inst_cmd->add_option("corpus", corpus_path)->required();
  inst_cmd->add_option("-o,--out", out_path, "Model file (default stdout)");

  auto* stats_cmd = app.add_subcommand("stats", "Class sizes, unique counts and intersections");
  stats_cmd->add_option("model", model_path)->required();

  auto* gen_cmd = app.add_subcommand("generalise", "Merge similar level-0 classes");
  gen_cmd->alias("generalize");
  gen_cmd->add_option("model", model_path)->required();
  gen_cmd->add_option("--tau", tau_text, "Threshold, decimal or fraction")->required();
  gen_cmd->add_option("-o,--out", out_path, "Model file (default stdout)");

  auto* tree_cmd = app.add_subcommand("clustertree", "Dendrogram and tau sweep");
  tree_cmd->add_option("model", model_path)->required();
  tree_cmd->add_option("--grid", grid_text, "lo:hi:step sweep grid (default 0.1:1:0.1)");
  tree_cmd->add_option("-o,--out", out_path, "Output file (default stdout)");

  auto* count_cmd = app.add_subcommand("count", "Count words by syllable (slot) length");
  count_cmd->add_option("model", model_path)->required();
  count_cmd->add_option("-k", k_text, "Slot count or range a:b (default 2)");
  count_cmd->add_flag("--distinct", distinct, "Also count distinct strings");

  auto* check_cmd = app.add_subcommand("check", "Membership test with derivation");
  check_cmd->add_option("model", model_path)->required();
  check_cmd->add_option("word", word_args, "Word; tokenized with --alphabet, else one token per argument")->required();

  auto* enum_cmd = app.add_subcommand("enumerate", "List derivations up to a slot count");
  enum_cmd->add_option("model", model_path)->required();
  enum_cmd->add_option("--max-k", max_k, "Largest slot count")->required();
  enum_cmd->add_option("--limit", limit, "Stop after this many derivations (0 = all)");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*ingest_cmd) {
      Run run("ingest", g);
      auto alphabet = need_alphabet(run, g);
      run.param("require_stress", g.require_stress);
      run.param("whitespace", g.whitespace);
      auto result = ofs::ingest(run.read(corpus_path), alphabet, ingest_options(g));
      std::string normalized;
      for (const auto& w : result.words) normalized += w.to_text() + "\n";
      run.write(out_path, normalized);
      const std::string log = ofs::reject_log_tsv(result.rejects);
      if (rejects_path.empty()) {
        if (!result.rejects.empty()) std::cerr << log;
      } else {
        run.write(rejects_path, log, "rejects");
      }
      std::cerr << "accepted " << result.words.size() << ", rejected " << result.rejects.size() << "\n";
      run.finish();
    } else if (*inst_cmd) {
      Run run("instantiate", g);
      auto alphabet = need_alphabet(run, g);
      run.param("require_stress", g.require_stress);
      auto proto = ofs::parse_prototype(run.read(proto_path));
      auto result = ofs::ingest(run.read(corpus_path), alphabet, ingest_options(g));
      if (!result.rejects.empty()) {
        std::cerr << "ignored " << result.rejects.size() << " rejected line(s)\n";
      }
      auto model = ofs::instantiate(proto, ofs::marked_corpus(result.words), alphabet.class_table());
      const std::string text = ofs::serialize_model(model);
      if (out_path.empty()) {
        run.write("", text);
      } else {
        run.write(out_path, text);
        std::cout << size_summary(model);
      }
      run.finish();
    } else if (*stats_cmd) {
      require_format(g, {"text", "tsv"});
      Run run("stats", g);
      const int digits = sim_digits(g);
      auto model = read_model(run, model_path);
      if (model.is_empty()) throw ofs::InvalidModel("model is empty");
      auto stats = ofs::class_stats(model);
      auto table = ofs::intersection_table(model);
      run.param("format", g.format);
      run.param("sim_digits", digits);
      run.write("", g.format == "tsv" ? ofs::render_stats_tsv(stats, table, digits)
                                      : ofs::render_stats_text(stats, table, digits));
      run.finish();
    } else if (*gen_cmd) {
      Run run("generalise", g);
      const auto tau = parse_tau(tau_text);
      const int digits = sim_digits(g);
      auto model = read_model(run, model_path);
      run.param("tau", ofs::to_fraction_string(tau));
      auto result = ofs::generalise(model, tau);
      run.write(out_path, ofs::serialize_model(result.model));
      auto& log = out_path.empty() ? std::cerr : std::cout;
      for (const auto& m : result.merges) {
        log << "merged";
        for (const auto& member : m.members) log << ' ' << member.label;
        log << " -> " << m.new_name.label << " (level " << m.new_name.level << ")\n";
      }
      if (result.merges.empty()) log << "no merges at tau " << ofs::to_decimal_string(tau, digits) << "\n";
      run.finish();
    } else if (*tree_cmd) {
      Run run("clustertree", g);
      const int digits = sim_digits(g);
      auto model = read_model(run, model_path);
      if (model.is_empty()) throw ofs::InvalidModel("model is empty");
      std::vector<ofs::Rational> grid;
      if (grid_text.empty()) {
        grid = ofs::tau_grid(ofs::Rational(1, 10), ofs::Rational(1), ofs::Rational(1, 10));
      } else {
        auto a = grid_text.find(':');
        auto b = a == std::string::npos ? a : grid_text.find(':', a + 1);
        if (b == std::string::npos) throw UsageError("--grid expects lo:hi:step");
        auto lo = parse_tau(grid_text.substr(0, a));
        auto hi = parse_tau(grid_text.substr(a + 1, b - a - 1));
        auto step = parse_tau(grid_text.substr(b + 1));
        grid = ofs::tau_grid(lo, hi, step);
      }
      ofs::Dendrogram tree(ofs::similarity_matrix(model));
      run.param("format", g.format);
      std::vector<std::string> grid_strings;
      for (const auto& t : grid) grid_strings.push_back(ofs::to_fraction_string(t));
      run.param("grid", grid_strings);
      std::string text;
      if (g.format == "dot") {
        text = tree.to_dot(digits);
      } else if (g.format == "tsv") {
        text = ofs::sweep_tsv(tree, grid);
      } else {
        text = tree.to_text(digits) + "\n" + ofs::sweep_tsv(tree, grid);
      }
      run.write(out_path, text);
      run.finish();
    } else if (*count_cmd) {
      require_format(g, {"text", "tsv"});
      Run run("count", g);
      auto [lo, hi] = parse_range(k_text);
      if (lo == 0) throw UsageError("-k must be positive");
      auto model = read_model(run, model_path);
      run.param("k", k_text);
      run.param("distinct", distinct);
      const auto automaton = ofs::Automaton::compile(model);
      const std::uint64_t budget = ofs::default_state_budget();
      std::vector<ofs::CountRow> rows;
      for (std::size_t k = lo; k <= hi; ++k) {
        ofs::CountRow row{k, ofs::count_derivations(automaton, k), std::nullopt};
        if (distinct) row.distinct = ofs::count_distinct(model, k, budget);
        rows.push_back(std::move(row));
      }
      run.write("", g.format == "tsv" ? ofs::render_counts_tsv(rows) : ofs::render_counts_text(rows));
      run.finish();
    } else if (*check_cmd) {
      Run run("check", g);
      auto model = read_model(run, model_path);
      ofs::Word word;
      if (!g.alphabet.empty()) {
        auto alphabet = ofs::parse_alphabet(run.read(g.alphabet));
        std::string joined;
        for (const auto& w : word_args) joined += w + " ";
        for (auto& t : ofs::tokenize(joined, alphabet, g.whitespace ? ofs::TokenizeMode::kWhitespace
                                                                     : ofs::TokenizeMode::kLongestMatch)) {
          if (!ofs::is_reserved(t)) word.push_back(std::move(t));
        }
      } else {
        for (const auto& w : word_args) {
          if (!ofs::is_reserved(w)) word.push_back(w);
        }
      }
      auto d = ofs::parse(model, word);
      std::string text = ofs::join_spaced(word) + "\t";
      text += d ? "accepted\t" + ofs::to_string(*d) + "\n" : "rejected\n";
      run.write("", text);
      run.finish();
    } else if (*enum_cmd) {
      Run run("enumerate", g);
      auto model = read_model(run, model_path);
      run.param("max_k", max_k);
      run.param("limit", limit);
      std::string text = "slots\tword\tderivation\n";
      std::size_t n = 0;
      ofs::enumerate(model, max_k, [&](const ofs::Word& w, const ofs::Derivation& d) {
        std::size_t slots = 0;
        auto leaves = [&](auto&& self, const ofs::Derivation& node) -> void {
          if (node.is_leaf()) ++slots;
          for (const auto& c : node.children) self(self, c);
        };
        leaves(leaves, d);
        text += std::to_string(slots) + "\t" + ofs::join_spaced(w) + "\t" + ofs::to_string(d) + "\n";
        return limit == 0 || ++n < limit;
      });
      run.write("", text);
      run.finish();
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ofs::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const ofs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
