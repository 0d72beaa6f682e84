#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "biauto/alphabet.hpp"
#include "biauto/automaton.hpp"
#include "biauto/error.hpp"
#include "biauto/group.hpp"
#include "biauto/regex.hpp"
#include "biauto/structure.hpp"
#include "biauto/verdict.hpp"

namespace biauto {

using Json = nlohmann::ordered_json;

struct NamedStructure {
  std::string name;
  Structure structure;
};

namespace detail {

inline Json const& field(Json const& obj, char const* key, std::string const& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + "." + key + ": missing");
  return obj.at(key);
}

template <class T>
T field_as(Json const& obj, char const* key, std::string const& where) {
  Json const& v = field(obj, key, where);
  try {
    return v.get<T>();
  } catch (nlohmann::json::exception const&) {
    throw ParseError(where + "." + key + ": wrong type");
  }
}

inline char symbol_of(Json const& v, std::string const& where) {
  if (!v.is_string() || v.get<std::string>().size() != 1) {
    throw ParseError(where + ": expected a one-character string");
  }
  return v.get<std::string>()[0];
}

}  // namespace detail

inline Automaton automaton_from_json(Alphabet const& alphabet, Json const& j, std::string const& where = "automaton") {
  auto n = detail::field_as<std::size_t>(j, "states", where);
  Automaton a(alphabet, n);
  auto state = [&](Json const& v, std::string const& at) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() >= n) throw ParseError(at + ": state out of range");
    return v.get<State>();
  };
  for (auto const& q : detail::field(j, "initial", where)) a.add_initial(state(q, where + ".initial"));
  for (auto const& q : detail::field(j, "accepting", where)) a.set_accepting(state(q, where + ".accepting"));
  std::size_t i = 0;
  for (auto const& t : detail::field(j, "transitions", where)) {
    std::string at = where + ".transitions[" + std::to_string(i++) + "]";
    if (!t.is_array() || t.size() != 3) throw ParseError(at + ": expected [from, \"letter\", to]");
    char c = detail::symbol_of(t[1], at);
    auto letter = alphabet.find(c);
    if (!letter) throw ParseError(at + ": letter '" + std::string(1, c) + "' not in the alphabet");
    a.add_transition(state(t[0], at), *letter, state(t[2], at));
  }
  return a;
}

inline Json automaton_to_json(Automaton const& a) {
  Json j;
  j["states"] = a.size();
  j["initial"] = a.initial();
  Json acc = Json::array();
  for (State q = 0; q < a.size(); ++q) {
    if (a.accepting(q)) acc.push_back(q);
  }
  j["accepting"] = acc;
  Json tr = Json::array();
  for (State q = 0; q < a.size(); ++q) {
    for (Letter x = 0; x < a.alphabet().size(); ++x) {
      for (State t : a.successors(q, x)) tr.push_back(Json::array({q, std::string(1, a.alphabet().symbol(x)), t}));
    }
  }
  j["transitions"] = tr;
  return j;
}

inline NamedStructure structure_from_json(Json const& j) {
  if (!j.is_object()) throw ParseError("structure: expected a JSON object");
  std::string name = j.contains("name") ? detail::field_as<std::string>(j, "name", "structure") : "";
  Json const& group = detail::field(j, "group", "structure");
  auto kind = detail::field_as<std::string>(group, "kind", "group");
  Json const& gens = detail::field(j, "generators", "structure");
  if (!gens.is_array() || gens.empty()) throw ParseError("generators: expected a nonempty array");

  std::string symbols, inverses;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string at = "generators[" + std::to_string(i) + "]";
    symbols.push_back(detail::symbol_of(detail::field(gens[i], "symbol", at), at + ".symbol"));
    inverses.push_back(detail::symbol_of(detail::field(gens[i], "inverse", at), at + ".inverse"));
  }
  Alphabet alphabet = [&] {
    try {
      return Alphabet(symbols, inverses);
    } catch (Error const& e) {
      throw ValidationError(std::string("generators: ") + e.what());
    }
  }();

  auto image = [&](std::size_t i) -> Json const& {
    return detail::field(gens[i], "image", "generators[" + std::to_string(i) + "]");
  };
  GroupBackend backend = [&] {
    try {
      if (kind == "free_abelian") {
        auto rank = detail::field_as<std::size_t>(group, "rank", "group");
        std::vector<std::vector<std::int64_t>> images;
        for (std::size_t i = 0; i < gens.size(); ++i) {
          images.push_back(detail::field_as<std::vector<std::int64_t>>(gens[i], "image",
                                                                      "generators[" + std::to_string(i) + "]"));
        }
        return GroupBackend::free_abelian(alphabet, rank, images);
      }
      if (kind == "free_group") {
        std::string basis, inverse_basis;
        if (group.contains("basis")) {
          basis = detail::field_as<std::string>(group, "basis", "group");
          inverse_basis = detail::field_as<std::string>(group, "inverse_basis", "group");
        } else {
          // Default basis: generators not already named as an earlier inverse.
          for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (inverse_basis.find(symbols[i]) == std::string::npos && basis.find(symbols[i]) == std::string::npos) {
              basis.push_back(symbols[i]);
              inverse_basis.push_back(inverses[i]);
            }
          }
        }
        if (group.contains("rank") && detail::field_as<std::size_t>(group, "rank", "group") != basis.size()) {
          throw ValidationError("group.rank: does not match the basis size " + std::to_string(basis.size()));
        }
        std::vector<std::string> images;
        for (std::size_t i = 0; i < gens.size(); ++i) {
          Json const& img = image(i);
          if (!img.is_string()) throw ParseError("generators[" + std::to_string(i) + "].image: expected a word");
          images.push_back(img.get<std::string>());
        }
        return GroupBackend::free_group(alphabet, basis, inverse_basis, images);
      }
      if (kind == "finite_table") {
        auto table = detail::field_as<std::vector<std::vector<std::size_t>>>(group, "table", "group");
        auto identity = detail::field_as<std::size_t>(group, "identity", "group");
        std::vector<std::size_t> images;
        for (std::size_t i = 0; i < gens.size(); ++i) {
          images.push_back(detail::field_as<std::size_t>(gens[i], "image", "generators[" + std::to_string(i) + "]"));
        }
        return GroupBackend::finite_table(alphabet, table, identity, images);
      }
    } catch (ValidationError const& e) {
      throw ValidationError(std::string("group/generators: ") + e.what());
    }
    throw ParseError("group.kind: unknown kind '" + kind + "'");
  }();

  Json const& lang = detail::field(j, "language", "structure");
  Automaton a = [&] {
    if (lang.contains("regex")) {
      auto text = detail::field_as<std::string>(lang, "regex", "language");
      try {
        return compile_regex(alphabet, text);
      } catch (Error const& e) {
        throw ParseError(std::string("language.regex: ") + e.what());
      }
    }
    if (lang.contains("automaton")) return automaton_from_json(alphabet, lang.at("automaton"), "language.automaton");
    throw ParseError("language: expected \"regex\" or \"automaton\"");
  }();
  return {std::move(name), Structure(std::move(backend), a)};
}

inline NamedStructure parse_structure_text(std::string const& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return structure_from_json(j);
}

inline NamedStructure parse_structure_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_structure_text(buf.str());
}

// Structure file with the language written out as an automaton.
inline Json structure_to_json(std::string const& name, Structure const& s) {
  GroupBackend const& g = s.backend();
  Alphabet const& alpha = s.alphabet();
  Json j;
  j["name"] = name;
  Json group;
  group["kind"] = to_string(g.kind());
  switch (g.kind()) {
    case GroupKind::free_abelian:
      group["rank"] = g.rank();
      break;
    case GroupKind::free_group:
      group["rank"] = g.rank();
      group["basis"] = g.basis();
      group["inverse_basis"] = g.inverse_basis();
      break;
    case GroupKind::finite_table:
      group["table"] = g.table();
      group["identity"] = g.identity_index();
      break;
  }
  j["group"] = group;
  Json gens = Json::array();
  for (Letter x = 0; x < alpha.size(); ++x) {
    Json gen;
    gen["symbol"] = std::string(1, alpha.symbol(x));
    gen["inverse"] = std::string(1, alpha.symbol(alpha.inverse(x)));
    GroupElement const& img = g.image(x);
    switch (g.kind()) {
      case GroupKind::free_abelian:
        gen["image"] = std::vector<std::int64_t>(img.data().begin(), img.data().end());
        break;
      case GroupKind::free_group:
        gen["image"] = g.serialize(img);
        break;
      case GroupKind::finite_table:
        gen["image"] = img[0];
        break;
    }
    gens.push_back(gen);
  }
  j["generators"] = gens;
  j["language"] = Json{{"automaton", automaton_to_json(s.language())}};
  return j;
}

inline Json witness_to_json(Alphabet const& alpha, FtWitness const& w) {
  return Json{{"w1", alpha.format(w.w1)}, {"a", alpha.format(w.a)},         {"b", alpha.format(w.b)},
              {"w2", alpha.format(w.w2)}, {"time", w.time},                 {"distance", w.distance},
              {"two_sided", w.two_sided}};
}

inline FtWitness witness_from_json(Alphabet const& alpha, Json const& j) {
  FtWitness w;
  w.w1 = alpha.parse(detail::field_as<std::string>(j, "w1", "witness"));
  w.a = alpha.parse(detail::field_as<std::string>(j, "a", "witness"));
  w.b = alpha.parse(detail::field_as<std::string>(j, "b", "witness"));
  w.w2 = alpha.parse(detail::field_as<std::string>(j, "w2", "witness"));
  w.time = detail::field_as<std::size_t>(j, "time", "witness");
  w.distance = detail::field_as<std::int64_t>(j, "distance", "witness");
  w.two_sided = j.value("two_sided", false);
  return w;
}

inline Json verdict_to_json(Alphabet const& alpha, Verdict const& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["condition"] = v.condition;
  j["k"] = v.k;
  j["bound_used"] = v.bound_used;
  j["evidence"] = v.evidence;
  j["checked"] = v.checked;
  if (v.witness) j["witness"] = witness_to_json(alpha, *v.witness);
  if (v.certificate) {
    j["certificate"] = Json{{"cutoff", v.certificate->cutoff},
                            {"explored", v.certificate->explored},
                            {"differences", v.certificate->differences},
                            {"boundary", v.certificate->boundary}};
  }
  if (v.fiber) {
    Json cycles = Json::array();
    for (auto const& c : v.fiber->cycles) {
      cycles.push_back(Json{{"state", c.state}, {"label", alpha.format(c.label)}, {"multiplicity", c.multiplicity}});
    }
    Json f{{"cycles", cycles}};
    if (auto const& p = v.fiber->pump) {
      f["pump"] = Json{{"from", p->from}, {"to", p->to}, {"left", alpha.format(p->left)},
                       {"core", alpha.format(p->core)}, {"right", alpha.format(p->right)}};
    }
    f["first"] = alpha.format(v.fiber->first);
    f["second"] = alpha.format(v.fiber->second);
    j["fiber"] = f;
  }
  if (v.observed_max) j["observed_max"] = *v.observed_max;
  return j;
}

}  // namespace biauto
