#include "lassynt/spec_file.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <system_error>

namespace lassynt {

std::vector<std::string> SpecFile::props() const {
  std::vector<std::string> p = inputs;
  p.insert(p.end(), outputs.begin(), outputs.end());
  return p;
}

std::string SpecFile::to_text() const {
  std::string s = "[inputs]";
  for (const auto &a : inputs)
    s += ' ' + a;
  s += "\n[outputs]";
  for (const auto &a : outputs)
    s += ' ' + a;
  s += "\n[ltl] " + formula.to_string() + "\n";
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_names(std::string_view s, std::size_t line) {
  static const std::regex ident("[a-zA-Z_][a-zA-Z0-9_]*");
  static const std::set<std::string> reserved{"X", "F", "G", "U", "R", "true", "false"};
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string name;
  while (in >> name) {
    if (!std::regex_match(name, ident))
      throw SpecError("line " + std::to_string(line) + ": invalid atom name '" +
                          name + "'",
                      line);
    if (reserved.count(name))
      throw SpecError("line " + std::to_string(line) + ": '" + name +
                          "' is a reserved word",
                      line);
    out.push_back(name);
  }
  return out;
}

}  // namespace

SpecFile parse_spec(std::string_view text) {
  SpecFile spec;
  bool have_inputs = false, have_outputs = false, have_ltl = false;
  std::string formula_text;
  std::size_t formula_line = 0;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (line.empty() || line.front() == '#')
      continue;
    auto section = [&](std::string_view tag) {
      return line.substr(0, tag.size()) == tag;
    };
    if (section("[inputs]")) {
      if (have_inputs)
        throw SpecError("line " + std::to_string(line_no) + ": duplicate [inputs]", line_no);
      spec.inputs = split_names(line.substr(8), line_no);
      have_inputs = true;
    } else if (section("[outputs]")) {
      if (have_outputs)
        throw SpecError("line " + std::to_string(line_no) + ": duplicate [outputs]", line_no);
      spec.outputs = split_names(line.substr(9), line_no);
      have_outputs = true;
    } else if (section("[ltl]")) {
      if (have_ltl)
        throw SpecError("line " + std::to_string(line_no) + ": duplicate [ltl]", line_no);
      formula_text = std::string(trim(line.substr(5)));
      formula_line = line_no;
      have_ltl = true;
    } else {
      throw SpecError("line " + std::to_string(line_no) +
                          ": expected [inputs], [outputs] or [ltl]",
                      line_no);
    }
  }
  if (!have_ltl)
    throw SpecError("missing [ltl] section", line_no);

  std::set<std::string> declared;
  for (const auto &a : spec.inputs)
    if (!declared.insert(a).second)
      throw SpecError("atom '" + a + "' declared twice", 0);
  for (const auto &a : spec.outputs)
    if (!declared.insert(a).second)
      throw SpecError("atom '" + a + "' is declared as input and output", 0);

  try {
    spec.formula = parse_ltl(formula_text, declared);
  } catch (const LtlParseError &e) {
    throw SpecError("line " + std::to_string(formula_line) + ": " + e.what(),
                    formula_line);
  }
  return spec;
}

SpecFile load_spec(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw std::system_error(std::make_error_code(std::errc::no_such_file_or_directory),
                            "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

}  // namespace lassynt
