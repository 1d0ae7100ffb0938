#include "diamond/presentation_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace diamond {

// ---- scalar literals ----

namespace {

struct ScalarParser {
  const Workspace* ws;
  const std::vector<DotRingSpec>* rings;
  const ColorSeq* colors;
  std::string text;
  size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw usage_error("cannot read polynomial '" + text + "': " + msg);
  }

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos != text.size()) fail("trailing input at offset " +
                                 std::to_string(pos));
    return v;
  }

  Scalar expr() {
    Scalar v = eat('-') ? -term() : (void(eat('+')), term());
    while (true) {
      skip();
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  Scalar term() {
    Scalar v = factor();
    while (true) {
      skip();
      if (eat('*'))
        v *= factor();
      else
        return v;
    }
  }

  Scalar factor() {
    Scalar v = atom();
    skip();
    if (eat('^')) {
      skip();
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (start == pos) fail("missing exponent");
      v = v.pow(std::stoi(text.substr(start, pos - start)));
    }
    return v;
  }

  Scalar atom() {
    skip();
    if (pos >= text.size()) fail("unexpected end");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Scalar v = expr();
      if (!eat(')')) fail("missing )");
      return v;
    }
    if (c == '-') {
      ++pos;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      long long num = std::stoll(text.substr(start, pos - start));
      long long den = 1;
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        size_t dstart = pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
        if (dstart == pos) fail("missing denominator");
        den = std::stoll(text.substr(dstart, pos - dstart));
      }
      return Scalar(ws, Rational(num, den));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      if (pos < text.size() && text[pos] == '@') {
        ++pos;
        size_t dstart = pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
        if (dstart == pos) fail("missing position after @");
        int strand = std::stoi(text.substr(dstart, pos - dstart));
        if (!colors || strand < 1 ||
            strand > static_cast<int>(colors->size()))
          fail("strand position " + std::to_string(strand) +
               " out of range for " + name);
        ColorId color = (*colors)[strand - 1];
        bool is_gen = false;
        for (const auto& g : (*rings)[color].generators)
          is_gen = is_gen || g == name;
        if (!is_gen)
          fail(name + " is not a dot generator of the color at strand " +
               std::to_string(strand));
        ParamId base = ws->add_generator(name, color);
        return Scalar::param(ws, ws->positioned(base, strand));
      }
      auto id = ws->find_global(name);
      if (!id) fail("unknown parameter " + name);
      return Scalar::param(ws, *id);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Scalar parse_scalar(const Workspace* ws, const std::string& text,
                    const std::vector<DotRingSpec>& rings,
                    const ColorSeq& position_colors) {
  ScalarParser p{ws, &rings, &position_colors, text};
  return p.parse();
}

// ---- presentation files ----

namespace {

struct Line {
  int number;
  std::string text;
};

[[noreturn]] void fail_at(const std::string& filename, int line,
                          const std::string& msg) {
  throw usage_error(filename + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// "name = value" -> pair
std::pair<std::string, std::string> split_assign(const std::string& s,
                                                 const std::string& filename,
                                                 int line) {
  size_t eq = s.find('=');
  if (eq == std::string::npos)
    fail_at(filename, line, "expected 'name = value' in '" + s + "'");
  return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

LinComb parse_rule_rhs(const Alphabet& alphabet, const Workspace* ws,
                       const std::string& text, const std::string& filename,
                       int line) {
  // terms separated by +/- at depth 0; each term: optional coefficient
  // (rational or parenthesized polynomial), optional word ("1" = empty)
  std::vector<std::pair<Word, Scalar>> terms;
  size_t pos = 0;
  int sign = 1;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skip();
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    sign = text[pos] == '-' ? -1 : 1;
    ++pos;
  }
  while (true) {
    skip();
    if (pos >= text.size()) break;
    Scalar coeff(ws, Rational(sign));
    bool have_word = false;
    Word word;
    // coefficient part
    if (text[pos] == '(') {
      int depth = 0;
      size_t start = pos;
      for (; pos < text.size(); ++pos) {
        if (text[pos] == '(') ++depth;
        if (text[pos] == ')' && --depth == 0) {
          ++pos;
          break;
        }
      }
      coeff = coeff * parse_scalar(ws, text.substr(start + 1,
                                                   pos - start - 2),
                                   {}, {});
      skip();
    } else if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '/'))
        ++pos;
      std::string num = text.substr(start, pos - start);
      size_t slash = num.find('/');
      Rational r = slash == std::string::npos
                       ? Rational(std::stoll(num))
                       : Rational(std::stoll(num.substr(0, slash)),
                                  std::stoll(num.substr(slash + 1)));
      if (num == "1" && (pos >= text.size() || text[pos] == '+' ||
                         text[pos] == '-' || text[pos] == ' ')) {
        // bare "1" denotes the empty word with unit coefficient
        have_word = true;
      } else {
        coeff = coeff * Scalar(ws, r);
      }
      skip();
    }
    // word part
    if (!have_word && pos < text.size() && text[pos] != '+' &&
        text[pos] != '-') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_'))
        ++pos;
      std::string wtext = text.substr(start, pos - start);
      if (wtext.empty())
        fail_at(filename, line, "cannot read rule term near '" +
                                    text.substr(start) + "'");
      try {
        word = parse_word(alphabet, wtext);
      } catch (const usage_error& e) {
        fail_at(filename, line, e.what());
      }
      have_word = true;
    }
    if (!have_word && coeff.is_zero())
      fail_at(filename, line, "empty rule term");
    terms.push_back({word, coeff});
    skip();
    if (pos >= text.size()) break;
    if (text[pos] == '+')
      sign = 1;
    else if (text[pos] == '-')
      sign = -1;
    else
      fail_at(filename, line,
              "expected + or - near '" + text.substr(pos) + "'");
    ++pos;
  }
  return LinComb::collect(alphabet, std::move(terms));
}

OrderSpec parse_order(const Alphabet& alphabet, const std::string& text,
                      const std::string& filename, int line) {
  auto toks = split_ws(text);
  if (toks.empty()) fail_at(filename, line, "empty order specification");
  const std::string& kind = toks[0];
  if (kind == "deglex") {
    std::vector<int> precedence(alphabet.size());
    if (toks.size() == 1) {
      for (int k = 0; k < alphabet.size(); ++k) precedence[k] = k;
    } else {
      if (static_cast<int>(toks.size()) != alphabet.size() + 1)
        fail_at(filename, line, "deglex needs every letter exactly once");
      for (int rank = 0; rank < alphabet.size(); ++rank) {
        int letter = alphabet.find(toks[rank + 1]);
        if (letter < 0)
          fail_at(filename, line, "unknown letter " + toks[rank + 1]);
        precedence[letter] = rank;
      }
    }
    return OrderSpec::deglex(precedence);
  }
  if (kind == "length") return OrderSpec::length();
  if (kind == "coxeter") {
    if (toks.size() != 2)
      fail_at(filename, line, "coxeter order needs a strand count");
    return OrderSpec::coxeter(std::stoi(toks[1]));
  }
  if (kind == "weighted") {
    std::vector<OrderSpec::WeightComponent> comps;
    using WC = OrderSpec::WeightComponent;
    for (size_t q = 1; q < toks.size(); ++q) {
      const std::string& t = toks[q];
      if (t.rfind("count:", 0) == 0) {
        int l = alphabet.find(t.substr(6));
        if (l < 0) fail_at(filename, line, "unknown letter in " + t);
        comps.push_back({WC::What::letter_count, l, 0});
      } else if (t.rfind("inv:", 0) == 0) {
        auto parts = split_on(t.substr(4), ',');
        if (parts.size() != 2) fail_at(filename, line, "bad component " + t);
        int a = alphabet.find(parts[0]);
        int b = alphabet.find(parts[1]);
        if (a < 0 || b < 0) fail_at(filename, line, "unknown letter in " + t);
        comps.push_back({WC::What::inversion_count, a, b});
      } else {
        fail_at(filename, line, "unknown weighted component " + t);
      }
    }
    return OrderSpec::weighted(comps);
  }
  fail_at(filename, line, "unknown order kind " + kind);
}

}  // namespace

PresentationFile parse_presentation(std::istream& in,
                                    const std::string& filename) {
  PresentationFile file;
  file.ws = std::make_shared<Workspace>();
  const Workspace* ws = file.ws.get();

  std::string kind;
  std::vector<std::string> params;
  std::map<std::string, std::vector<Line>> sections;
  std::string section;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail_at(filename, lineno, "unterminated section header");
      section = line.substr(1, line.size() - 2);
      sections[section];
      continue;
    }
    if (section.empty()) {
      auto toks = split_ws(line);
      if (toks[0] == "version" && toks.size() == 2) {
        file.version = std::stoi(toks[1]);
        if (file.version != 1)
          fail_at(filename, lineno, "unsupported format version");
      } else if (toks[0] == "kind" && toks.size() == 2) {
        kind = toks[1];
      } else if (toks[0] == "params") {
        for (size_t q = 1; q < toks.size(); ++q) {
          params.push_back(toks[q]);
          ws->add_global(toks[q]);
        }
      } else {
        fail_at(filename, lineno, "unexpected line before any section");
      }
      continue;
    }
    sections[section].push_back({lineno, line});
  }

  if (kind == "word") {
    RewriteSystem sys;
    if (!sections.count("alphabet") || sections["alphabet"].empty())
      fail_at(filename, 0, "word systems need an [alphabet] section");
    std::vector<std::string> names;
    for (const auto& l : sections["alphabet"])
      for (const auto& t : split_ws(l.text)) {
        if (t.size() != 1)
          fail_at(filename, l.number, "alphabet letters must be single "
                                      "characters in files");
        names.push_back(t);
      }
    sys.alphabet = Alphabet::of(names);
    sys.order = OrderSpec::deglex();
    if (sections.count("order")) {
      const auto& lines = sections["order"];
      if (lines.size() != 1)
        fail_at(filename, lines.empty() ? 0 : lines[1].number,
                "[order] takes exactly one line");
      sys.order =
          parse_order(sys.alphabet, lines[0].text, filename, lines[0].number);
    }
    for (const auto& l : sections.count("rules") ? sections["rules"]
                                                 : std::vector<Line>{}) {
      auto arrow = l.text.find("->");
      if (arrow == std::string::npos)
        fail_at(filename, l.number, "rules use 'lhs -> rhs'");
      RewriteRule rule;
      std::string lhs = trim(l.text.substr(0, arrow));
      try {
        rule.lhs = parse_word(sys.alphabet, lhs);
      } catch (const usage_error& e) {
        fail_at(filename, l.number, e.what());
      }
      rule.rhs = parse_rule_rhs(sys.alphabet, ws, trim(l.text.substr(arrow + 2)),
                                filename, l.number);
      rule.label = lhs;
      sys.rules.push_back(std::move(rule));
    }
    file.system = std::move(sys);
  } else if (kind == "hecke") {
    HeckePresentation p;
    p.ws = ws;
    for (const auto& l : sections.count("colors") ? sections["colors"]
                                                  : std::vector<Line>{})
      for (const auto& t : split_ws(l.text)) p.color_names.push_back(t);
    if (p.color_names.empty())
      fail_at(filename, 0, "hecke presentations need a [colors] section");
    p.rings.resize(p.color_names.size());
    auto color_of = [&](const std::string& name, int line) {
      for (int c = 0; c < p.colors(); ++c)
        if (p.color_names[c] == name) return c;
      fail_at(filename, line, "unknown color " + name);
    };
    for (const auto& l : sections.count("dot_rings") ? sections["dot_rings"]
                                                     : std::vector<Line>{}) {
      auto colon = l.text.find(':');
      if (colon == std::string::npos)
        fail_at(filename, l.number, "dot_rings lines use 'color: gens...'");
      int c = color_of(trim(l.text.substr(0, colon)), l.number);
      for (const auto& g : split_ws(l.text.substr(colon + 1))) {
        p.rings[c].generators.push_back(g);
        ws->add_generator(g, c);
      }
    }
    for (const auto& l : sections.count("permissible")
                             ? sections["permissible"]
                             : std::vector<Line>{}) {
      auto toks = split_ws(l.text);
      if (toks.size() != 2)
        fail_at(filename, l.number, "permissible lines name two colors");
      p.permitted.insert(
          {color_of(toks[0], l.number), color_of(toks[1], l.number)});
    }
    for (const auto& l : sections.count("relations") ? sections["relations"]
                                                     : std::vector<Line>{}) {
      auto colon = l.text.find(':');
      if (colon == std::string::npos)
        fail_at(filename, l.number, "relation lines use 'id colors : data'");
      auto head = split_ws(l.text.substr(0, colon));
      std::string body = trim(l.text.substr(colon + 1));
      if (head.empty()) fail_at(filename, l.number, "missing relation id");
      const std::string& id = head[0];
      std::vector<ColorId> cs;
      for (size_t q = 1; q < head.size(); ++q)
        cs.push_back(color_of(head[q], l.number));
      std::map<std::string, std::string> fields;
      if (!body.empty())
        for (const auto& part : split_on(body, ';')) {
          auto [k, v] = split_assign(part, filename, l.number);
          fields[k] = v;
        }
      auto field = [&](const char* name, const ColorSeq& ring,
                       const char* dflt) {
        std::string v = fields.count(name) ? fields[name] : dflt;
        fields.erase(name);
        try {
          return parse_scalar(ws, v, p.rings, ring);
        } catch (const usage_error& e) {
          fail_at(filename, l.number, e.what());
        }
      };
      auto lambda_field = [&]() {
        Scalar v = field("lambda", {}, "1");
        if (!v.is_constant())
          fail_at(filename, l.number, "lambda must be a rational constant");
        return v.constant();
      };
      if (id == "5.8a") {
        if (cs.size() != 1)
          fail_at(filename, l.number, "5.8a takes one color");
        ColorSeq ring{cs[0], cs[0]};
        p.quad_same[cs[0]] = {field("alpha", ring, "0"),
                              field("beta", ring, "0")};
      } else if (id == "5.8b") {
        if (cs.size() != 2)
          fail_at(filename, l.number, "5.8b takes the two bottom colors");
        ColorSeq ring{cs[0], cs[1]};
        p.quad_mixed[{cs[0], cs[1]}] = field("Q", ring, "0");
      } else if (id == "5.8c" || id == "5.8d" || id == "5.8e" ||
                 id == "5.8f" || id == "5.8g") {
        std::array<ColorId, 3> key;
        if (id == "5.8c") {
          if (cs.size() != 1)
            fail_at(filename, l.number, "5.8c takes one color");
          key = {cs[0], cs[0], cs[0]};
        } else {
          if (cs.size() != 3)
            fail_at(filename, l.number, id + " takes the three bottom colors");
          key = {cs[0], cs[1], cs[2]};
        }
        bool iii = key[0] == key[1] && key[1] == key[2];
        bool iij = key[0] == key[1] && key[1] != key[2];
        bool jii = key[0] != key[1] && key[1] == key[2];
        bool iji = key[0] == key[2] && key[0] != key[1];
        bool ijk = key[0] != key[1] && key[1] != key[2] && key[0] != key[2];
        if ((id == "5.8c" && !iii) || (id == "5.8d" && !iij) ||
            (id == "5.8e" && !jii) || (id == "5.8f" && !iji) ||
            (id == "5.8g" && !ijk))
          fail_at(filename, l.number,
                  "bottom colors do not match the pattern of " + id);
        ColorSeq ring = top_colors({key[0], key[1], key[2]}, {1, 2, 1});
        BraidRel rel;
        rel.lambda = lambda_field();
        Scalar zero = Scalar::zero(ws);
        rel.st_coeff = zero;
        rel.ts_coeff = zero;
        rel.s_coeff = zero;
        rel.t_coeff = zero;
        rel.id_coeff = zero;
        if (id == "5.8c") {
          rel.st_coeff = field("a", ring, "0");
          rel.ts_coeff = field("b", ring, "0");
          rel.s_coeff = field("c", ring, "0");
          rel.t_coeff = field("d", ring, "0");
          rel.id_coeff = field("e", ring, "0");
        } else if (id == "5.8d") {
          rel.st_coeff = field("p", ring, "0");
        } else if (id == "5.8e") {
          rel.ts_coeff = field("p", ring, "0");
        } else if (id == "5.8f") {
          rel.id_coeff = field("q", ring, "0");
        }
        p.braid[key] = std::move(rel);
      } else {
        fail_at(filename, l.number, "unknown relation id " + id);
      }
      if (!fields.empty())
        fail_at(filename, l.number,
                "unknown field '" + fields.begin()->first + "' for " + id);
    }
    for (const auto& l : sections.count("maps") ? sections["maps"]
                                                : std::vector<Line>{}) {
      auto colon = l.text.find(':');
      if (colon == std::string::npos)
        fail_at(filename, l.number, "map lines use 'phi|del colors : images'");
      auto head = split_ws(l.text.substr(0, colon));
      if (head.size() < 2 || head.size() > 3)
        fail_at(filename, l.number, "map head is 'phi i' or 'phi i j'");
      bool is_del = head[0] == "del";
      if (!is_del && head[0] != "phi")
        fail_at(filename, l.number, "maps are phi or del");
      ColorId ci = color_of(head[1], l.number);
      ColorId cj = head.size() == 3 ? color_of(head[2], l.number) : ci;
      if (is_del && head.size() == 3)
        fail_at(filename, l.number, "del maps take a single color");
      ColorSeq domain{ci, cj};
      ColorSeq target = ci == cj ? ColorSeq{ci, ci} : ColorSeq{cj, ci};
      RingMapSpec spec;
      spec.kind = is_del ? RingMapSpec::Kind::twisted_derivation
                         : RingMapSpec::Kind::endomorphism;
      for (const auto& part : split_on(l.text.substr(colon + 1), ';')) {
        if (part.empty()) continue;
        auto arrow = part.find("->");
        if (arrow == std::string::npos)
          fail_at(filename, l.number, "map images use 'gen@pos -> poly'");
        std::string lhs = trim(part.substr(0, arrow));
        auto at = lhs.find('@');
        if (at == std::string::npos)
          fail_at(filename, l.number, "map domain entries are gen@pos");
        std::string gname = lhs.substr(0, at);
        int strand = std::stoi(lhs.substr(at + 1));
        if (strand < 1 || strand > 2)
          fail_at(filename, l.number, "map domain strand must be 1 or 2");
        ColorId dc = domain[strand - 1];
        bool is_gen = false;
        for (const auto& g : p.rings[dc].generators) is_gen |= g == gname;
        if (!is_gen)
          fail_at(filename, l.number,
                  gname + " is not a generator of color " +
                      p.color_names[dc]);
        ParamId key = ws->positioned(ws->add_generator(gname, dc), strand);
        try {
          spec.images[key] =
              parse_scalar(ws, trim(part.substr(arrow + 2)), p.rings, target);
        } catch (const usage_error& e) {
          fail_at(filename, l.number, e.what());
        }
      }
      if (is_del)
        p.del[ci] = std::move(spec);
      else if (ci == cj)
        p.phi[ci] = std::move(spec);
      else
        p.phi_mixed[{ci, cj}] = std::move(spec);
    }
    // wire each del's twist to its color's phi
    for (auto& [c, d] : p.del)
      if (p.phi.count(c))
        d.twist = std::make_shared<RingMapSpec>(p.phi.at(c));
    file.system = std::move(p);
  } else {
    fail_at(filename, 0, "file must declare 'kind word' or 'kind hecke'");
  }

  if (sections.count("options")) {
    for (const auto& l : sections["options"]) {
      auto toks = split_ws(l.text);
      if (toks.size() == 2 && toks[0] == "budget")
        file.budget = std::stoll(toks[1]);
      else if (toks.size() == 2 && toks[0] == "max-length")
        file.max_length = std::stoi(toks[1]);
      else
        fail_at(filename, l.number, "unknown option line");
    }
  }
  return file;
}

PresentationFile parse_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open " + path);
  return parse_presentation(in, path);
}

PresentationFile parse_presentation_string(const std::string& text) {
  std::istringstream in(text);
  return parse_presentation(in);
}

// ---- serialization ----

namespace {

std::string scalar_text(const Scalar& s) { return s.str(); }

std::string lincomb_text(const Alphabet& a, const LinComb& t) {
  if (t.is_zero()) return "0*1";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : t.terms()) {
    if (!first) out += " + ";
    first = false;
    if (c.is_constant() && c.constant() == Rational(1))
      out += word_str(a, w);
    else if (c.is_constant() && c.constant().is_integer() &&
             !(c.constant() < Rational(0)))
      out += c.constant().str() + (w.empty() ? "" : " " + word_str(a, w));
    else
      out += "(" + scalar_text(c) + ")" + (w.empty() ? " 1" : " " + word_str(a, w));
  }
  return out;
}

}  // namespace

std::string serialize_presentation(const PresentationFile& f) {
  std::ostringstream out;
  out << "version " << f.version << "\n";
  if (f.is_word()) {
    const RewriteSystem& sys = f.word();
    out << "kind word\n";
    // globals actually used by rule coefficients
    std::set<std::string> globals;
    for (const auto& r : sys.rules)
      for (const auto& [w, c] : r.rhs.terms())
        for (ParamId id : c.support())
          if (!c.workspace()->param(id).tagged())
            globals.insert(c.workspace()->param(id).name);
    if (!globals.empty()) {
      out << "params";
      for (const auto& g : globals) out << " " << g;
      out << "\n";
    }
    out << "\n[alphabet]\n";
    for (int k = 0; k < sys.alphabet.size(); ++k)
      out << (k ? " " : "") << sys.alphabet.names[k];
    out << "\n\n[order]\n" << sys.order.describe(sys.alphabet) << "\n";
    out << "\n[rules]\n";
    for (const auto& r : sys.rules)
      out << word_str(sys.alphabet, r.lhs) << " -> "
          << lincomb_text(sys.alphabet, r.rhs) << "\n";
  } else {
    const HeckePresentation& p = f.hecke();
    out << "kind hecke\n";
    std::set<std::string> globals;
    auto collect = [&](const Scalar& s) {
      for (ParamId id : s.support())
        if (!p.ws->param(id).tagged()) globals.insert(p.ws->param(id).name);
    };
    for (const auto& [c, rel] : p.quad_same) {
      collect(rel.alpha);
      collect(rel.beta);
    }
    for (const auto& [k, q] : p.quad_mixed) collect(q);
    for (const auto& [k, rel] : p.braid) {
      collect(rel.st_coeff);
      collect(rel.ts_coeff);
      collect(rel.s_coeff);
      collect(rel.t_coeff);
      collect(rel.id_coeff);
    }
    for (const auto& [c, m] : p.phi)
      for (const auto& [id, img] : m.images) collect(img);
    for (const auto& [c, m] : p.del)
      for (const auto& [id, img] : m.images) collect(img);
    for (const auto& [k, m] : p.phi_mixed)
      for (const auto& [id, img] : m.images) collect(img);
    if (!globals.empty()) {
      out << "params";
      for (const auto& g : globals) out << " " << g;
      out << "\n";
    }
    out << "\n[colors]\n";
    for (const auto& n : p.color_names) out << n << "\n";
    out << "\n[dot_rings]\n";
    for (int c = 0; c < p.colors(); ++c) {
      out << p.color_names[c] << ":";
      for (const auto& g : p.rings[c].generators) out << " " << g;
      out << "\n";
    }
    out << "\n[permissible]\n";
    for (const auto& [a, b] : p.permitted)
      out << p.color_names[a] << " " << p.color_names[b] << "\n";
    out << "\n[relations]\n";
    for (const auto& [c, rel] : p.quad_same)
      out << "5.8a " << p.color_names[c] << ": alpha = "
          << scalar_text(rel.alpha) << " ; beta = " << scalar_text(rel.beta)
          << "\n";
    for (const auto& [key, q] : p.quad_mixed)
      out << "5.8b " << p.color_names[key.first] << " "
          << p.color_names[key.second] << ": Q = " << scalar_text(q) << "\n";
    for (const auto& [key, rel] : p.braid) {
      bool iii = key[0] == key[1] && key[1] == key[2];
      bool iij = key[0] == key[1] && key[1] != key[2];
      bool jii = key[0] != key[1] && key[1] == key[2];
      bool iji = key[0] == key[2] && key[0] != key[1];
      std::string lam = " lambda = " + rel.lambda.str();
      if (iii) {
        out << "5.8c " << p.color_names[key[0]] << ":" << lam;
        out << " ; a = " << scalar_text(rel.st_coeff);
        out << " ; b = " << scalar_text(rel.ts_coeff);
        out << " ; c = " << scalar_text(rel.s_coeff);
        out << " ; d = " << scalar_text(rel.t_coeff);
        out << " ; e = " << scalar_text(rel.id_coeff);
      } else {
        const char* id = iij ? "5.8d" : jii ? "5.8e" : iji ? "5.8f" : "5.8g";
        out << id << " " << p.color_names[key[0]] << " "
            << p.color_names[key[1]] << " " << p.color_names[key[2]] << ":"
            << lam;
        if (iij) out << " ; p = " << scalar_text(rel.st_coeff);
        if (jii) out << " ; p = " << scalar_text(rel.ts_coeff);
        if (iji) out << " ; q = " << scalar_text(rel.id_coeff);
      }
      out << "\n";
    }
    auto write_map = [&](const std::string& name, ColorId ci, ColorId cj,
                         const RingMapSpec& m) {
      out << name << " " << p.color_names[ci];
      if (ci != cj) out << " " << p.color_names[cj];
      out << ":";
      bool first = true;
      for (const auto& [id, img] : m.images) {
        Param par = p.ws->param(id);
        out << (first ? " " : " ; ") << par.name << "@" << par.position
            << " -> " << scalar_text(img);
        first = false;
      }
      out << "\n";
    };
    bool any_map = !p.phi.empty() || !p.del.empty() || !p.phi_mixed.empty();
    if (any_map) {
      out << "\n[maps]\n";
      for (const auto& [c, m] : p.phi) write_map("phi", c, c, m);
      for (const auto& [c, m] : p.del) write_map("del", c, c, m);
      for (const auto& [key, m] : p.phi_mixed)
        write_map("phi", key.first, key.second, m);
    }
  }
  out << "\n[options]\n";
  out << "budget " << f.budget << "\n";
  if (f.max_length >= 0) out << "max-length " << f.max_length << "\n";
  return out.str();
}

}  // namespace diamond
