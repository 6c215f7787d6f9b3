#include "jetvar/report.hpp"

#include <sstream>

#include "json.hpp"

namespace jetvar {

const Report::Value* Report::get(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return &v;
  return nullptr;
}

namespace {

using Json = nlohmann::ordered_json;

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

std::string bounds_text(const Bounds& b) {
  return "max_jet_order=" + std::to_string(b.max_jet_order) +
         " max_poly_degree=" + std::to_string(b.max_poly_degree);
}

std::string warning_line(const std::string& flag) {
  return "WARNING: zero-test incomplete (" + flag + ")";
}

std::string render_text(const Report& r) {
  const auto& sig = r.signature;
  std::ostringstream os;
  os << "command: " << r.command << '\n';
  for (const auto& [key, value] : r.fields) {
    std::visit(Overloaded{
                   [&](std::monostate) { os << key << ": none\n"; },
                   [&](bool b) { os << key << ": " << (b ? "true" : "false") << '\n'; },
                   [&](const std::string& s) { os << key << ": " << s << '\n'; },
                   [&](const Expression& e) { os << key << ": " << to_string(e, sig) << '\n'; },
                   [&](const Form& f) { os << key << ": " << to_string(f, sig) << '\n'; },
                   [&](const SourceForm& s) { os << key << ": " << to_string(s, sig) << '\n'; },
                   [&](const VerticalField& u) {
                     os << key << ": " << (u.is_zero() ? "0" : to_string(u, sig)) << '\n';
                   },
                   [&](const Bounds& b) { os << key << ": " << bounds_text(b) << '\n'; },
                   [&](const Residuals& res) {
                     if (res.entries.empty()) {
                       os << key << ": none\n";
                       return;
                     }
                     os << key << ":\n";
                     for (const auto& [name, f] : res.entries)
                       os << "  " << name << ": " << to_string(f, sig) << '\n';
                   },
               },
               value);
  }
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  for (const auto& f : r.completeness_flags) os << warning_line(f) << '\n';
  for (const auto& f : r.failures) os << "IDENTITY CHECK FAILED: " << f << '\n';
  return os.str();
}

std::string render_json(const Report& r) {
  const auto& sig = r.signature;
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = r.command;
  for (const auto& [key, value] : r.fields) {
    j[key] = std::visit(
        Overloaded{
            [&](std::monostate) { return Json(nullptr); },
            [&](bool b) { return Json(b); },
            [&](const std::string& s) { return Json(s); },
            [&](const Expression& e) { return Json(to_string(e, sig)); },
            [&](const Form& f) { return Json(to_string(f, sig)); },
            [&](const SourceForm& s) {
              Json o = Json::object();
              for (const auto& [i, e] : s.components)
                o[sig.fiber_name(static_cast<std::size_t>(i))] = to_string(e, sig);
              return o;
            },
            [&](const VerticalField& u) {
              Json o = Json::object();
              for (const auto& [i, e] : u.components)
                o[sig.fiber_name(static_cast<std::size_t>(i))] = to_string(e, sig);
              return o;
            },
            [&](const Bounds& b) {
              return Json{{"max_jet_order", b.max_jet_order}, {"max_poly_degree", b.max_poly_degree}};
            },
            [&](const Residuals& res) {
              Json o = Json::object();
              for (const auto& [name, f] : res.entries) o[name] = to_string(f, sig);
              return o;
            },
        },
        value);
  }
  j["completeness_flags"] = r.completeness_flags;
  j["notes"] = r.notes;
  j["failures"] = r.failures;
  return j.dump(2) + "\n";
}

std::string latex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '&' || c == '%' || c == '#' || c == '$') out += '\\';
    out += c;
  }
  return out;
}

std::string render_latex(const Report& r) {
  const auto& sig = r.signature;
  std::ostringstream os;
  os << "\\begin{description}\n";
  os << "\\item[command] \\texttt{" << latex_escape(r.command) << "}\n";
  for (const auto& [key, value] : r.fields) {
    os << "\\item[" << latex_escape(key) << "] ";
    std::visit(Overloaded{
                   [&](std::monostate) { os << "none"; },
                   [&](bool b) { os << (b ? "true" : "false"); },
                   [&](const std::string& s) { os << latex_escape(s); },
                   [&](const Expression& e) { os << '$' << to_latex(e, sig) << '$'; },
                   [&](const Form& f) { os << '$' << to_latex(f, sig) << '$'; },
                   [&](const SourceForm& s) { os << '$' << to_latex(s, sig) << '$'; },
                   [&](const VerticalField& u) {
                     if (u.is_zero()) {
                       os << "$0$";
                       return;
                     }
                     os << '$';
                     bool first = true;
                     for (const auto& [i, e] : u.components) {
                       if (!first) os << " + ";
                       first = false;
                       os << "\\left(" << to_latex(e, sig) << "\\right)\\partial_{"
                          << sig.fiber_name(static_cast<std::size_t>(i)) << '}';
                     }
                     os << '$';
                   },
                   [&](const Bounds& b) { os << latex_escape(bounds_text(b)); },
                   [&](const Residuals& res) {
                     if (res.entries.empty()) {
                       os << "none";
                       return;
                     }
                     os << "\\begin{description}\n";
                     for (const auto& [name, f] : res.entries)
                       os << "\\item[" << latex_escape(name) << "] $" << to_latex(f, sig) << "$\n";
                     os << "\\end{description}";
                   },
               },
               value);
    os << '\n';
  }
  for (const auto& n : r.notes) os << "\\item[note] " << latex_escape(n) << '\n';
  for (const auto& f : r.completeness_flags)
    os << "\\item[warning] \\textbf{" << latex_escape(warning_line(f)) << "}\n";
  for (const auto& f : r.failures) os << "\\item[failure] \\textbf{" << latex_escape(f) << "}\n";
  os << "\\end{description}\n";
  return os.str();
}

}  // namespace

std::string render(const Report& r, OutputFormat format) {
  switch (format) {
    case OutputFormat::Text: return render_text(r);
    case OutputFormat::Json: return render_json(r);
    case OutputFormat::Latex: return render_latex(r);
  }
  return render_text(r);
}

}  // namespace jetvar
