#include "jetvar/model.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace jetvar {

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Text: return "text";
    case OutputFormat::Json: return "json";
    case OutputFormat::Latex: return "latex";
  }
  return "?";
}

std::optional<OutputFormat> parse_output_format(std::string_view s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  if (s == "latex") return OutputFormat::Latex;
  return std::nullopt;
}

namespace {

const std::set<std::string> kReserved = {"sin", "cos", "exp", "theta", "d",
                                         "base", "field", "lagrangian", "symmetry",
                                         "source", "form", "set"};

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

// Cursor over one line with 1-based columns.
class LineReader {
 public:
  LineReader(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  int column() const { return static_cast<int>(pos_) + 1; }
  int line() const { return line_; }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  /// Hands the remainder of the line to a sub-parser.
  std::string_view take_rest() {
    skip_space();
    std::string_view r = text_.substr(pos_);
    pos_ = text_.size();
    return r;
  }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) {
    skip_space();
    throw ParseError(msg, line_, column(), std::move(expected));
  }
  [[noreturn]] void fail_at(int col, const std::string& msg, std::vector<std::string> expected = {}) {
    throw ParseError(msg, line_, col, std::move(expected));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
};

struct Builder {
  std::optional<std::vector<std::string>> base;
  std::optional<std::vector<std::string>> fields;
  std::optional<BundleSignature> sig;
  std::map<std::string, Expression> lagrangians;
  std::map<std::string, VerticalField> symmetries;
  std::map<std::string, SourceForm> sources;
  std::map<std::string, Form> forms;
  std::set<std::string> names;
  std::set<std::pair<std::string, int>> source_components;
  ModelOptions options;
};

template <class F>
auto with_position(LineReader& r, F&& parse) {
  r.skip_space();
  const int col = r.column();
  std::string_view text = r.take_rest();
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw e.relocated(r.line(), col - 1);
  }
}

void declare_coords(LineReader& r, Builder& b, bool is_base) {
  auto& slot = is_base ? b.base : b.fields;
  if (slot) r.fail(std::string("duplicate '") + (is_base ? "base" : "field") + "' declaration");
  std::vector<std::string> names;
  while (!r.at_end()) {
    int col = r.column();
    std::string w = r.word();
    if (w.empty()) r.fail("expected a coordinate name", {"name"});
    if (kReserved.count(w)) r.fail_at(col, "'" + w + "' is reserved");
    if (!is_ident(w)) r.fail_at(col, "invalid name '" + w + "'");
    for (const auto* other : {&b.base, &b.fields})
      if (*other)
        for (const auto& s : **other)
          if (s == w) r.fail_at(col, "duplicate name " + w);
    for (const auto& s : names)
      if (s == w) r.fail_at(col, "duplicate name " + w);
    names.push_back(w);
  }
  if (names.empty()) r.fail("expected at least one name", {"name"});
  slot = names;
  if (b.base && b.fields) {
    for (const auto& f : *b.fields)
      for (const auto& x : *b.base)
        if (f == "d" + x) r.fail("field name " + f + " clashes with the differential d" + x);
    b.sig.emplace(*b.base, *b.fields);
  }
}

std::string declared_name(LineReader& r, Builder& b) {
  int col = r.column();
  std::string name = r.word();
  if (name.empty()) r.fail("expected a name", {"name"});
  if (kReserved.count(name)) r.fail_at(col, "'" + name + "' is reserved");
  if (b.sig && (b.sig->base_index(name) >= 0 || b.sig->fiber_index(name) >= 0))
    r.fail_at(col, "name " + name + " is already a coordinate");
  return name;
}

void require_signature(LineReader& r, const Builder& b) {
  if (!b.sig) r.fail("declare 'base' and 'field' before using them");
}

void claim(LineReader& r, Builder& b, const std::string& name, int col) {
  if (!b.names.insert(name).second) r.fail_at(col, "duplicate name " + name);
}

void parse_line(LineReader& r, Builder& b) {
  const int kw_col = r.column();
  std::string kw = r.word();
  if (kw == "base" || kw == "field") {
    declare_coords(r, b, kw == "base");
  } else if (kw == "lagrangian" || kw == "symmetry" || kw == "form") {
    require_signature(r, b);
    int col = r.column();
    std::string name = declared_name(r, b);
    if (!r.accept('=')) r.fail("expected '='", {"'='"});
    claim(r, b, name, col);
    const BundleSignature& sig = *b.sig;
    if (kw == "lagrangian") {
      b.lagrangians.emplace(name, with_position(r, [&](std::string_view t) { return parse_expression(t, sig); }));
    } else if (kw == "symmetry") {
      b.symmetries.emplace(name, with_position(r, [&](std::string_view t) { return parse_vector_field(t, sig); }));
    } else {
      b.forms.emplace(name, with_position(r, [&](std::string_view t) { return parse_form(t, sig); }));
    }
  } else if (kw == "source") {
    require_signature(r, b);
    int col = r.column();
    std::string name = declared_name(r, b);
    if (!r.accept('[')) r.fail("expected '[' and a field name", {"'['"});
    int fcol = r.column();
    std::string field = r.word();
    int i = b.sig->fiber_index(field);
    if (i < 0) r.fail_at(fcol, "unknown field " + field);
    if (!r.accept(']')) r.fail("expected ']'", {"']'"});
    if (!r.accept('=')) r.fail("expected '='", {"'='"});
    auto it = b.sources.find(name);
    if (it == b.sources.end()) {
      claim(r, b, name, col);
      it = b.sources.emplace(name, SourceForm(b.sig->base_dim())).first;
    }
    if (!b.source_components.emplace(name, i).second)
      r.fail_at(fcol, "duplicate component " + field + " of source " + name);
    const BundleSignature& sig = *b.sig;
    it->second.set(i, with_position(r, [&](std::string_view t) { return parse_expression(t, sig); }));
  } else if (kw == "set") {
    int col = r.column();
    std::string key = r.word();
    int vcol = r.column();
    std::string value = r.word();
    if (value.empty()) r.fail("expected a value", {"value"});
    if (key == "max_jet_order" || key == "max_poly_degree") {
      int v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        r.fail_at(vcol, "expected an integer");
      }
      if (v <= 0) r.fail_at(vcol, key + " must be positive");
      (key == "max_jet_order" ? b.options.max_jet_order : b.options.max_poly_degree) = v;
    } else if (key == "output") {
      auto f = parse_output_format(value);
      if (!f) r.fail_at(vcol, "unknown output format " + value);
      b.options.output = f;
    } else {
      r.fail_at(col, "unknown setting '" + key + "'");
    }
  } else {
    r.fail_at(kw_col, "unknown directive '" + kw + "'",
              {"base", "field", "lagrangian", "symmetry", "source", "form", "set"});
  }
  if (!r.at_end()) r.fail("unexpected trailing text");
}

}  // namespace

ModelFile parse_model(std::string_view source) {
  Builder b;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineReader r(line, line_no);
    if (!r.at_end()) parse_line(r, b);
    start = end + 1;
  }
  if (!b.sig) throw ParseError("model needs 'base' and 'field' declarations", line_no, 1);
  return ModelFile{*b.sig, std::move(b.lagrangians), std::move(b.symmetries),
                   std::move(b.sources), std::move(b.forms), b.options};
}

std::string print_model(const ModelFile& m) {
  const auto& sig = m.signature;
  std::ostringstream os;
  os << "base";
  for (const auto& s : sig.base_names()) os << ' ' << s;
  os << "\nfield";
  for (const auto& s : sig.fiber_names()) os << ' ' << s;
  os << '\n';
  for (const auto& [name, e] : m.lagrangians) os << "lagrangian " << name << " = " << to_string(e, sig) << '\n';
  for (const auto& [name, s] : m.sources) {
    if (s.is_zero()) {
      os << "source " << name << '[' << sig.fiber_name(0) << "] = 0\n";
      continue;
    }
    for (const auto& [i, e] : s.components)
      os << "source " << name << '[' << sig.fiber_name(static_cast<std::size_t>(i)) << "] = "
         << to_string(e, sig) << '\n';
  }
  for (const auto& [name, u] : m.symmetries) {
    os << "symmetry " << name << " = ";
    if (u.is_zero()) os << "0*d/d" << sig.fiber_name(0);
    else os << to_string(u, sig);
    os << '\n';
  }
  for (const auto& [name, f] : m.forms) os << "form " << name << " = " << to_string(f, sig) << '\n';
  if (m.options.max_jet_order) os << "set max_jet_order " << *m.options.max_jet_order << '\n';
  if (m.options.max_poly_degree) os << "set max_poly_degree " << *m.options.max_poly_degree << '\n';
  if (m.options.output) os << "set output " << to_string(*m.options.output) << '\n';
  return os.str();
}

}  // namespace jetvar
