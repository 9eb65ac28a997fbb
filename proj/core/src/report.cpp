#include "colouring/report.hpp"

#include <sstream>
#include <stdexcept>

namespace colouring {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

nlohmann::ordered_json q7_to_json(const Q7& x) {
  nlohmann::ordered_json j;
  j["a"] = x.a.str();
  j["b"] = x.b.str();
  j["decimal"] = x.to_decimal(kReportDecimalPlaces);
  return j;
}

Q7 q7_from_json(const nlohmann::ordered_json& j) {
  return Q7(Rational::from_string(j.at("a").get<std::string>()),
            Rational::from_string(j.at("b").get<std::string>()));
}

bool ReportDocument::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::ordered_json document_to_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["tool"] = doc.tool;
  j["version"] = doc.version;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : doc.config) cfg[k] = v;
  j["config"] = std::move(cfg);
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : doc.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["anchor"] = c.anchor;
    jc["pass"] = c.pass;
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    for (const auto& [label, x] : c.values) values[label] = q7_to_json(x);
    jc["values"] = std::move(values);
    nlohmann::ordered_json notes = nlohmann::ordered_json::object();
    for (const auto& [label, text] : c.notes) notes[label] = text;
    jc["notes"] = std::move(notes);
    if (c.runtime_seconds >= 0.0) jc["runtime_seconds"] = c.runtime_seconds;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  j["all_pass"] = doc.all_pass();
  return j;
}

ReportDocument document_from_json(const nlohmann::ordered_json& j) {
  ReportDocument doc;
  doc.tool = j.at("tool").get<std::string>();
  doc.version = j.at("version").get<std::string>();
  for (const auto& [k, v] : j.at("config").items())
    doc.config.emplace_back(k, v.get<std::string>());
  for (const auto& jc : j.at("checks")) {
    CheckRecord c;
    c.name = jc.at("name").get<std::string>();
    c.anchor = jc.at("anchor").get<std::string>();
    c.pass = jc.at("pass").get<bool>();
    for (const auto& [label, x] : jc.at("values").items()) c.values.emplace_back(label, q7_from_json(x));
    for (const auto& [label, text] : jc.at("notes").items())
      c.notes.emplace_back(label, text.get<std::string>());
    if (jc.contains("runtime_seconds")) c.runtime_seconds = jc["runtime_seconds"].get<double>();
    doc.checks.push_back(std::move(c));
  }
  return doc;
}

std::string write_report(const ReportDocument& doc, ReportFormat format) {
  if (format == ReportFormat::Json) return document_to_json(doc).dump(2) + "\n";

  std::ostringstream out;
  out << "section,check,anchor,pass,kind,label,a,b,text\n";
  out << "meta,,,,tool,," << csv_field(doc.tool) << ",,\n";
  out << "meta,,,,version,," << csv_field(doc.version) << ",,\n";
  for (const auto& [k, v] : doc.config)
    out << "config,,,,config," << csv_field(k) << ",,," << csv_field(v) << "\n";
  for (const auto& c : doc.checks) {
    const std::string head = "check," + csv_field(c.name) + "," + csv_field(c.anchor) + "," +
                             (c.pass ? "1" : "0") + ",";
    out << head << "verdict,,,,\n";
    for (const auto& [label, x] : c.values)
      out << head << "q7," << csv_field(label) << "," << csv_field(x.a.str()) << ","
          << csv_field(x.b.str()) << "," << csv_field(x.to_decimal(kReportDecimalPlaces)) << "\n";
    for (const auto& [label, text] : c.notes)
      out << head << "note," << csv_field(label) << ",,," << csv_field(text) << "\n";
  }
  return out.str();
}

ReportDocument parse_report(const std::string& text, ReportFormat format) {
  if (format == ReportFormat::Json)
    return document_from_json(nlohmann::ordered_json::parse(text));

  ReportDocument doc;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto f = csv_split(line);
    if (f.size() != 9) throw std::invalid_argument("parse_report: malformed CSV row");
    const std::string& section = f[0];
    if (section == "meta") {
      if (f[4] == "tool") doc.tool = f[6];
      else if (f[4] == "version") doc.version = f[6];
    } else if (section == "config") {
      doc.config.emplace_back(f[5], f[8]);
    } else if (section == "check") {
      if (doc.checks.empty() || doc.checks.back().name != f[1]) {
        CheckRecord c;
        c.name = f[1];
        c.anchor = f[2];
        c.pass = f[3] == "1";
        doc.checks.push_back(std::move(c));
      }
      CheckRecord& c = doc.checks.back();
      if (f[4] == "q7")
        c.values.emplace_back(f[5], Q7(Rational::from_string(f[6]), Rational::from_string(f[7])));
      else if (f[4] == "note")
        c.notes.emplace_back(f[5], f[8]);
    } else {
      throw std::invalid_argument("parse_report: unknown CSV section '" + section + "'");
    }
  }
  return doc;
}

}  // namespace colouring
