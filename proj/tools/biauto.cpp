// biauto: command-line front end for checking automatic and biautomatic
// structures. Every command writes JSON lines to standard output; the last
// record carries the result. Exit codes: 0 holds, 1 fails, 2 unknown,
// 3 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biauto/certify.hpp"
#include "biauto/checkers.hpp"
#include "biauto/finite_to_one.hpp"
#include "biauto/fixtures.hpp"
#include "biauto/io.hpp"
#include "biauto/svg.hpp"

using namespace biauto;

namespace {

constexpr int kExitUsage = 3;

void emit(Json const& j) { std::cout << j.dump() << "\n" << std::flush; }

int exit_code(Status s) {
  switch (s) {
    case Status::holds:
      return 0;
    case Status::fails:
      return 1;
    case Status::unknown:
      return 2;
  }
  return kExitUsage;
}

Progress progress_sink(std::string prefix) {
  return [prefix](std::string const& stage, std::size_t count) {
    emit(Json{{"type", "progress"}, {"stage", prefix.empty() ? stage : prefix + ":" + stage}, {"count", count}});
  };
}

Json verdict_record(Alphabet const& alpha, Verdict const& v) {
  Json j{{"type", "verdict"}};
  j.update(verdict_to_json(alpha, v));
  return j;
}

std::vector<std::string> split_commas(std::string const& text) {
  std::vector<std::string> out{""};
  for (char c : text) {
    if (c == ',') {
      out.emplace_back();
    } else {
      out.back().push_back(c);
    }
  }
  return out;
}

struct CheckOptions {
  std::string mode;
  std::string file;
  std::int64_t k = 3;
  std::size_t max_len = 16;
  bool certify = false;
  std::optional<std::size_t> cutoff;
};

Verdict one_sided(Structure const& s, CheckOptions const& o, Sidedness side, std::string const& condition,
                  std::string const& prefix) {
  if (o.certify) {
    std::size_t cutoff = o.cutoff.value_or(static_cast<std::size_t>(2 * o.k + 2));
    Verdict v = certify_ft(s, o.k, cutoff, side);
    v.condition = condition;
    if (v.certificate) progress_sink(prefix)("explored", v.certificate->explored);
    return v;
  }
  if (side == Sidedness::two_sided) return check_two_sided_ft_bounded(s, o.k, o.max_len, progress_sink(prefix));
  Verdict v = check_right_ft_bounded(s, o.k, o.max_len, progress_sink(prefix));
  v.condition = condition;
  return v;
}

int run_check(CheckOptions const& o) {
  if (o.k < 0) throw ValidationError("--k: must be nonnegative");
  NamedStructure ns = parse_structure_file(o.file);
  Structure const& s = ns.structure;
  if (o.mode == "automatic") {
    Verdict v = one_sided(s, o, Sidedness::right, to_string(Condition::right_ft), "");
    emit(verdict_record(s.alphabet(), v));
    return exit_code(v.status);
  }
  if (o.mode == "two-sided") {
    Verdict v = one_sided(s, o, Sidedness::two_sided, to_string(Condition::two_sided_ft), "");
    emit(verdict_record(s.alphabet(), v));
    return exit_code(v.status);
  }
  if (o.mode == "biautomatic") {
    Verdict forward = one_sided(s, o, Sidedness::right, to_string(Condition::right_ft), "L");
    Structure inv = s.inverse();
    Verdict backward = one_sided(inv, o, Sidedness::right, to_string(Condition::inverse_right_ft), "L_inverse");
    Status status = Status::holds;
    if (forward.fails() || backward.fails()) {
      status = Status::fails;
    } else if (!forward.holds() || !backward.holds()) {
      status = Status::unknown;
    }
    Json j{{"type", "verdict"}, {"status", to_string(status)}, {"condition", "biautomatic"}, {"k", o.k}};
    j["parts"] = Json::array({verdict_to_json(s.alphabet(), forward), verdict_to_json(s.alphabet(), backward)});
    if (forward.witness) {
      j["witness_side"] = "L";
      j["witness"] = witness_to_json(s.alphabet(), *forward.witness);
    } else if (backward.witness) {
      j["witness_side"] = "L_inverse";
      j["witness"] = witness_to_json(s.alphabet(), *backward.witness);
    }
    emit(j);
    return exit_code(status);
  }
  if (o.mode == "finite-to-one") {
    Verdict v = check_finite_to_one(s);
    emit(verdict_record(s.alphabet(), v));
    return exit_code(v.status);
  }
  throw ValidationError("check: unknown mode '" + o.mode + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check automatic and biautomatic structures on groups"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* cmd_check = app.add_subcommand("check", "Fellow-traveller and finite-to-one checks");
  cmd_check->add_option("mode", check.mode, "automatic | biautomatic | two-sided | finite-to-one")
      ->required()
      ->check(CLI::IsMember({"automatic", "biautomatic", "two-sided", "finite-to-one"}));
  cmd_check->add_option("file", check.file, "Structure file")->required();
  cmd_check->add_option("--k", check.k, "Fellow-traveller constant")->capture_default_str();
  cmd_check->add_option("--max-len", check.max_len, "Longest word enumerated")->capture_default_str();
  cmd_check->add_flag("--certify", check.certify, "Use the word-difference certifier");
  cmd_check->add_option("--ball-cutoff", check.cutoff, "Certifier radius (default 2k+2)");

  std::string bound_kind, bound_file;
  std::int64_t bound_k = 3;
  std::optional<std::size_t> bound_verify;
  auto* cmd_bound = app.add_subcommand("bound", "Length-difference bound N = n·|B_k|");
  cmd_bound->add_option("kind", bound_kind)->required()->check(CLI::IsMember({"lemma4"}));
  cmd_bound->add_option("file", bound_file)->required();
  cmd_bound->add_option("--k", bound_k)->capture_default_str();
  cmd_bound->add_option("--verify-max-len", bound_verify, "Also verify the bound on words up to this length");

  std::string const_kind, const_file;
  std::int64_t const_k = 3;
  std::optional<std::int64_t> const_n;
  auto* cmd_const = app.add_subcommand("constants", "Constants N+k and N+2k+1");
  cmd_const->add_option("kind", const_kind)->required()->check(CLI::IsMember({"theorem5"}));
  cmd_const->add_option("file", const_file, "Structure file, used for N when --n is omitted");
  cmd_const->add_option("--k", const_k)->capture_default_str();
  cmd_const->add_option("--n", const_n, "The length-difference bound N");

  std::string wit_file, wit_condition = "right-ft";
  std::int64_t wit_k = 3;
  std::size_t wit_len = 16;
  auto* cmd_wit = app.add_subcommand("witness", "Search for a shortest violating tuple");
  cmd_wit->add_option("file", wit_file)->required();
  cmd_wit->add_option("--condition", wit_condition)
      ->check(CLI::IsMember({"right-ft", "two-sided-ft", "inverse-right-ft"}))
      ->capture_default_str();
  cmd_wit->add_option("--k", wit_k)->capture_default_str();
  cmd_wit->add_option("--max-len", wit_len)->capture_default_str();

  std::string lang_kind, lang_file, lang_out;
  auto* cmd_lang = app.add_subcommand("lang", "Language constructions");
  cmd_lang->add_option("kind", lang_kind)->required()->check(CLI::IsMember({"invert"}));
  cmd_lang->add_option("file", lang_file)->required();
  cmd_lang->add_option("--out", lang_out)->required();

  std::string enum_file;
  std::size_t enum_len = 16;
  auto* cmd_enum = app.add_subcommand("enumerate", "List accepted words, shortest first");
  cmd_enum->add_option("file", enum_file)->required();
  cmd_enum->add_option("--max-len", enum_len)->capture_default_str();

  std::string plot_file, plot_words, plot_out, plot_fig;
  auto* cmd_plot = app.add_subcommand("plot", "Draw word paths in Z² as SVG");
  cmd_plot->add_option("file", plot_file)->required();
  auto* opt_words = cmd_plot->add_option("--words", plot_words, "Comma-separated words (2 or 3)");
  auto* opt_fig = cmd_plot->add_option("--figure1", plot_fig, "M,N,K: draw the two-sided configuration a·w1·b against w2");
  opt_words->excludes(opt_fig);
  cmd_plot->add_option("--out", plot_out)->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_check) return run_check(check);

    if (*cmd_bound) {
      NamedStructure ns = parse_structure_file(bound_file);
      if (bound_k < 0) throw ValidationError("--k: must be nonnegative");
      LengthBound b = lemma4_bound(ns.structure, bound_k);
      emit(Json{{"type", "bound"}, {"k", bound_k}, {"n_states", b.n_states}, {"ball_size", b.ball_size}, {"N", b.N}});
      if (!bound_verify) return 0;
      Verdict v = verify_lemma4_empirically(ns.structure, bound_k, *bound_verify, progress_sink(""));
      emit(verdict_record(ns.structure.alphabet(), v));
      return exit_code(v.status);
    }

    if (*cmd_const) {
      std::int64_t N = 0;
      if (const_n) {
        N = *const_n;
      } else if (!const_file.empty()) {
        N = lemma4_bound(parse_structure_file(const_file).structure, const_k).N;
      } else {
        throw ValidationError("constants: give --n or a structure file");
      }
      Theorem5Constants c = theorem5_constants(const_k, N);
      emit(Json{{"type", "constants"},
                {"k", const_k},
                {"N", N},
                {"biauto_reverse_bound", c.biauto_reverse_bound},
                {"two_sided_bound", c.two_sided_bound}});
      return 0;
    }

    if (*cmd_wit) {
      NamedStructure ns = parse_structure_file(wit_file);
      if (wit_len < 1) throw ValidationError("--max-len: must be at least 1");
      Condition c = wit_condition == "right-ft"       ? Condition::right_ft
                    : wit_condition == "two-sided-ft" ? Condition::two_sided_ft
                                                      : Condition::inverse_right_ft;
      Verdict v = search_witness(ns.structure, c, wit_k, wit_len, progress_sink(""));
      emit(verdict_record(ns.structure.alphabet(), v));
      return exit_code(v.status);
    }

    if (*cmd_lang) {
      NamedStructure ns = parse_structure_file(lang_file);
      Structure inv = ns.structure.inverse();
      std::string name = (ns.name.empty() ? std::string("structure") : ns.name) + "_inverse";
      std::ofstream out(lang_out);
      if (!out) throw ValidationError("--out: cannot write '" + lang_out + "'");
      out << structure_to_json(name, inv).dump(2) << "\n";
      emit(Json{{"type", "written"}, {"path", lang_out}, {"name", name}, {"states", inv.language().size()}});
      return 0;
    }

    if (*cmd_enum) {
      NamedStructure ns = parse_structure_file(enum_file);
      Structure const& s = ns.structure;
      std::size_t count = 0;
      for (auto const& w : enumerate_words(s.dfa(), enum_len)) {
        emit(Json{{"type", "word"}, {"word", s.format(w)}, {"image", s.backend().serialize(s.backend().evaluate(w))}});
        ++count;
      }
      emit(Json{{"type", "summary"}, {"count", count}, {"max_len", enum_len}});
      return 0;
    }

    if (*cmd_plot) {
      NamedStructure ns = parse_structure_file(plot_file);
      Structure const& s = ns.structure;
      PlotSpec spec;
      std::vector<Word> words;
      if (!plot_fig.empty()) {
        auto parts = split_commas(plot_fig);
        if (parts.size() != 3) throw ValidationError("--figure1: expected M,N,K");
        Figure1Words f = figure1_words(std::stoll(parts[0]), std::stoll(parts[1]), std::stoll(parts[2]));
        Word lhs = concat(concat(Word{f.a}, f.w1), Word{f.b});
        words = {f.w2, lhs};
        spec.labels = {"w2 = " + s.format(f.w2),
                       "a w1 b = " + s.format({f.a}) + " " + s.format(f.w1) + " " + s.format({f.b})};
        spec.title = "figure1 m=" + parts[0] + " n=" + parts[1] + " k=" + parts[2];
      } else if (!plot_words.empty()) {
        for (auto const& text : split_commas(plot_words)) words.push_back(s.parse(text));
        if (words.size() < 2 || words.size() > 3) throw ValidationError("--words: expected 2 or 3 words");
      } else {
        throw ValidationError("plot: give --words or --figure1");
      }
      std::string svg = plot_svg(spec, s.backend(), words);
      std::ofstream out(plot_out, std::ios::binary);
      if (!out) throw ValidationError("--out: cannot write '" + plot_out + "'");
      out << svg;
      emit(Json{{"type", "written"}, {"path", plot_out}, {"bytes", svg.size()}});
      return 0;
    }
  } catch (std::exception const& e) {
    emit(Json{{"type", "error"}, {"message", e.what()}});
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
