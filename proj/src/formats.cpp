#include "mcfgi/formats.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace mcfgi {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

}  // namespace

Typing parse_monoid_text(const std::string& text) {
  std::vector<std::string> names;
  std::string identity;
  std::vector<std::tuple<std::string, std::string, std::string>> products;
  std::map<char, std::string> letter_names;
  enum { None, Table, Hom } section = None;

  for (const auto& line : lines_of(text)) {
    if (starts_with(line, "elements:")) {
      names = split_ws(line.substr(9));
      section = None;
    } else if (starts_with(line, "identity:")) {
      identity = trim(line.substr(9));
      section = None;
    } else if (line == "table:") {
      section = Table;
    } else if (line == "h:") {
      section = Hom;
    } else if (section == Table) {
      // "x * y = z"
      auto star = line.find('*');
      auto eq = line.find('=');
      if (star == std::string::npos || eq == std::string::npos || eq < star)
        throw StructuralError("bad table line: " + line);
      products.emplace_back(trim(line.substr(0, star)),
                            trim(line.substr(star + 1, eq - star - 1)),
                            trim(line.substr(eq + 1)));
    } else if (section == Hom) {
      // "a -> s"
      auto arrow = line.find("->");
      if (arrow == std::string::npos) throw StructuralError("bad h line: " + line);
      std::string lhs = trim(line.substr(0, arrow));
      if (lhs.size() != 1) throw StructuralError("h letter must be a single character");
      letter_names[lhs[0]] = trim(line.substr(arrow + 2));
    } else {
      throw StructuralError("unexpected line in monoid file: " + line);
    }
  }

  if (names.empty()) throw StructuralError("monoid file declares no elements");
  auto idx = [&](const std::string& n) {
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) throw StructuralError("unknown monoid element: " + n);
    return static_cast<Elem>(it - names.begin());
  };

  const int n = static_cast<int>(names.size());
  std::vector<Elem> table(static_cast<size_t>(n) * n, -1);
  for (const auto& [a, b, c] : products)
    table[static_cast<size_t>(idx(a)) * n + idx(b)] = idx(c);
  for (Elem v : table)
    if (v < 0) throw StructuralError("monoid table is not total");

  auto monoid =
      std::make_shared<const FiniteMonoid>(names, idx(identity), std::move(table));
  std::vector<char> alphabet;
  std::map<char, Elem> letter_values;
  for (const auto& [c, name] : letter_names) {
    alphabet.push_back(c);
    letter_values[c] = idx(name);
  }
  Homomorphism hom(monoid.get(), std::move(alphabet), std::move(letter_values));
  return Typing{std::move(monoid), std::move(hom)};
}

std::string monoid_to_text(const FiniteMonoid& m, const Homomorphism& h) {
  std::ostringstream os;
  os << "elements:";
  for (const auto& n : m.names()) os << " " << n;
  os << "\nidentity: " << m.name(m.identity()) << "\ntable:\n";
  for (Elem a = 0; a < m.size(); ++a)
    for (Elem b = 0; b < m.size(); ++b)
      os << m.name(a) << " * " << m.name(b) << " = " << m.name(m.mul(a, b)) << "\n";
  os << "h:\n";
  for (char c : h.alphabet()) os << c << " -> " << m.name(h.letter(c)) << "\n";
  return os.str();
}

Dfa parse_dfa_text(const std::string& text) {
  Dfa dfa;
  std::vector<std::tuple<std::string, char, std::string>> trans;
  std::string start_name;
  for (const auto& line : lines_of(text)) {
    if (starts_with(line, "states:")) {
      dfa.states = split_ws(line.substr(7));
    } else if (starts_with(line, "start:")) {
      start_name = trim(line.substr(6));
    } else if (starts_with(line, "accepting:")) {
      // optional and ignored; only transitions matter here
    } else {
      // "q --a--> r"
      auto l = line.find("--");
      auto r = line.find("-->");
      if (l == std::string::npos || r == std::string::npos || r <= l)
        throw StructuralError("bad DFA transition line: " + line);
      std::string from = trim(line.substr(0, l));
      std::string letter = trim(line.substr(l + 2, r - l - 2));
      std::string to = trim(line.substr(r + 3));
      if (letter.size() != 1)
        throw StructuralError("DFA letter must be a single character: " + line);
      trans.emplace_back(from, letter[0], to);
    }
  }
  if (dfa.states.empty()) throw StructuralError("DFA file declares no states");
  auto state_idx = [&](const std::string& n) {
    auto it = std::find(dfa.states.begin(), dfa.states.end(), n);
    if (it == dfa.states.end()) throw StructuralError("unknown DFA state: " + n);
    return static_cast<int>(it - dfa.states.begin());
  };
  dfa.start = start_name.empty() ? 0 : state_idx(start_name);

  std::set<char> letters;
  for (const auto& [f, c, t] : trans) letters.insert(c);
  dfa.alphabet.assign(letters.begin(), letters.end());
  dfa.trans.assign(dfa.states.size(), std::vector<int>(dfa.alphabet.size(), -1));
  for (const auto& [f, c, t] : trans) {
    size_t li = std::find(dfa.alphabet.begin(), dfa.alphabet.end(), c) -
                dfa.alphabet.begin();
    dfa.trans[state_idx(f)][li] = state_idx(t);
  }
  for (const auto& row : dfa.trans)
    for (int q : row)
      if (q < 0) throw StructuralError("DFA transition table is not total");
  return dfa;
}

namespace {

// Template text: items separated by optional whitespace; components by
// top-level commas.  "x12" is variable x with index 12; quoted or bare
// single letters are terminals.
Template parse_template(const std::string& text, const std::vector<char>& alphabet) {
  Template t;
  TemplateWord cur;
  for (size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == ',') {
      t.components.push_back(cur);
      cur.clear();
      ++i;
    } else if ((c == 'x' || c == 'y') && i + 1 < text.size() && isdigit(text[i + 1])) {
      size_t j = i + 1;
      while (j < text.size() && isdigit(text[j])) ++j;
      int index = std::stoi(text.substr(i + 1, j - i - 1));
      cur.push_back(TemplateItem{c == 'x' ? TemplateItem::XVar : TemplateItem::YVar, 0,
                                 index});
      i = j;
    } else if (c == '\'') {
      if (i + 2 >= text.size() || text[i + 2] != '\'')
        throw StructuralError("bad quoted terminal in template: " + text);
      cur.push_back(TemplateItem{TemplateItem::Terminal, text[i + 1], 0});
      i += 3;
    } else {
      if (std::find(alphabet.begin(), alphabet.end(), c) == alphabet.end())
        throw StructuralError(std::string("template letter outside alphabet: ") + c);
      cur.push_back(TemplateItem{TemplateItem::Terminal, c, 0});
      ++i;
    }
  }
  t.components.push_back(cur);
  return t;
}

std::string template_text(const Template& t) {
  std::ostringstream os;
  for (size_t i = 0; i < t.components.size(); ++i) {
    if (i) os << ",";
    for (const auto& it : t.components[i]) {
      os << " ";
      switch (it.kind) {
        case TemplateItem::Terminal: os << it.ch; break;
        case TemplateItem::XVar: os << "x" << it.index; break;
        case TemplateItem::YVar: os << "y" << it.index; break;
      }
    }
  }
  std::string s = os.str();
  return s.empty() ? s : s.substr(1);
}

}  // namespace

Grammar parse_grammar_text(const std::string& text) {
  Grammar g;
  std::string start_name;
  std::vector<std::pair<std::string, std::string>> rule_lines;  // lhs, rhs

  for (const auto& line : lines_of(text)) {
    if (starts_with(line, "alphabet:")) {
      for (const auto& tok : split_ws(line.substr(9))) {
        if (tok.size() != 1)
          throw StructuralError("alphabet letters must be single characters");
        g.alphabet.push_back(tok[0]);
      }
    } else if (starts_with(line, "start")) {
      start_name = trim(line.substr(5));
      if (!start_name.empty() && start_name.back() == ';') {
        start_name.pop_back();
        start_name = trim(start_name);
      }
    } else if (starts_with(line, "fanout")) {
      std::string body = line.substr(6);
      if (!body.empty() && body.back() == ';') body.pop_back();
      std::istringstream is(body);
      std::string item;
      while (std::getline(is, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw StructuralError("bad fanout item: " + item);
        g.names.push_back(trim(item.substr(0, eq)));
        g.sys.fanout.push_back(std::stoi(trim(item.substr(eq + 1))));
      }
    } else {
      auto arrow = line.find("->");
      if (arrow == std::string::npos)
        throw StructuralError("unexpected line in grammar file: " + line);
      rule_lines.emplace_back(trim(line.substr(0, arrow)), trim(line.substr(arrow + 2)));
    }
  }

  if (start_name.empty()) throw StructuralError("grammar file declares no start symbol");
  g.sys.start = g.symbol(start_name);

  for (const auto& [lhs_name, rhs] : rule_lines) {
    Rule r;
    r.lhs = g.symbol(lhs_name);
    if (rhs.size() >= 3 && rhs.front() == '\'' && rhs[2] == '\'') {
      r.kind = Rule::Terminal;
      r.terminal = rhs[1];
    } else if (rhs.front() == '(') {
      // "(template)(B, C)"
      int depth = 0;
      size_t close = std::string::npos;
      for (size_t i = 0; i < rhs.size(); ++i) {
        if (rhs[i] == '(') ++depth;
        if (rhs[i] == ')') {
          --depth;
          if (depth == 0) {
            close = i;
            break;
          }
        }
      }
      if (close == std::string::npos) throw StructuralError("unbalanced template: " + rhs);
      std::string tmpl_text = rhs.substr(1, close - 1);
      std::string rest = trim(rhs.substr(close + 1));
      if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
        throw StructuralError("binary rule needs child pair: " + rhs);
      std::string children = rest.substr(1, rest.size() - 2);
      auto comma = children.find(',');
      if (comma == std::string::npos)
        throw StructuralError("binary rule needs two children: " + rhs);
      r.kind = Rule::Binary;
      r.tmpl = parse_template(tmpl_text, g.alphabet);
      r.child_b = g.symbol(trim(children.substr(0, comma)));
      r.child_c = g.symbol(trim(children.substr(comma + 1)));
    } else {
      r.kind = Rule::Start;
      r.child_b = g.symbol(rhs);
    }
    g.sys.rules.push_back(std::move(r));
  }
  return g;
}

std::string grammar_to_text(const Grammar& g) {
  std::ostringstream os;
  os << "alphabet:";
  for (char c : g.alphabet) os << " " << c;
  os << "\nstart " << g.names[g.sys.start] << "\nfanout ";
  for (size_t i = 0; i < g.names.size(); ++i)
    os << (i ? ", " : "") << g.names[i] << "=" << g.sys.fanout[i];
  os << "\n";
  for (const auto& r : g.sys.rules) {
    switch (r.kind) {
      case Rule::Start:
        os << g.names[r.lhs] << " -> " << g.names[r.child_b] << "\n";
        break;
      case Rule::Terminal:
        os << g.names[r.lhs] << " -> '" << r.terminal << "'\n";
        break;
      case Rule::Binary:
        os << g.names[r.lhs] << " -> (" << template_text(r.tmpl) << ")("
           << g.names[r.child_b] << ", " << g.names[r.child_c] << ")\n";
        break;
    }
  }
  return os.str();
}

std::vector<std::string> parse_sample_text(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot read file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot write file: " + path);
  f << content;
  if (!f) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace mcfgi
