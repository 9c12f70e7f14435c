#include "lfp/records.hpp"

#include <json.hpp>
#include <map>
#include <sstream>

#include "lfp/syntax.hpp"

namespace lfp {

using json = nlohmann::json;

RecordError::RecordError(const std::string& what, std::size_t line)
    : std::runtime_error("record " + std::to_string(line) + ": " + what), line_(line) {}

std::string path_to_text(const Path& p) {
  if (p.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += dir_token(p[i]);
  }
  return out;
}

namespace {

Dir dir_from_token(std::string_view tok) {
  if (tok == "fun") return Dir::Fun;
  if (tok == "arg") return Dir::Arg;
  if (tok == "body") return Dir::Body;
  throw std::invalid_argument("unknown path token '" + std::string(tok) + "'");
}

const char* direction_tag(Direction d) { return d == Direction::Forward ? "fwd" : "bwd"; }

json path_json(const Path& p) {
  json arr = json::array();
  for (Dir d : p) arr.push_back(dir_token(d));
  return arr;
}

std::string line_of(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += '\t';
    out += fields[i];
  }
  out += '\n';
  return out;
}

std::string emit(RecordFormat fmt, const std::vector<std::string>& text, const json& obj) {
  if (fmt == RecordFormat::Text) return line_of(text);
  return obj.dump() + "\n";
}

}  // namespace

Path path_from_text(std::string_view s) {
  Path p;
  if (s == "-" || s.empty()) return p;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    p.push_back(dir_from_token(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return p;
}

std::string render_step(const ConversionStep& cs, RecordFormat fmt) {
  std::string from = print(cs.from());
  std::string to = print(cs.to());
  const Step& s = cs.step;
  return emit(fmt, {"step", from, path_to_text(s.path), redex_tag(s.kind), direction_tag(cs.direction), to},
              json{{"record", "step"},
                   {"from", from},
                   {"path", path_json(s.path)},
                   {"rule", redex_tag(s.kind)},
                   {"dir", direction_tag(cs.direction)},
                   {"to", to}});
}

std::string render_trace(const Term& start, const NormalizeResult& result, const RuleSet& rules, RecordFormat fmt) {
  std::string out;
  out += emit(fmt, {"lfp-trace", "1"}, json{{"record", "trace"}, {"version", 1}});
  out += emit(fmt, {"rule", base_tag(rules.base())}, json{{"record", "rule"}, {"rule", base_tag(rules.base())}});
  if (rules.fix()) {
    std::string f = print(rules.fix()->f);
    out += emit(fmt, {"fix", rules.fix()->y, f}, json{{"record", "fix"}, {"var", rules.fix()->y}, {"term", f}});
  }
  std::string s = print(start);
  out += emit(fmt, {"start", s}, json{{"record", "start"}, {"term", s}});
  for (const auto& st : result.steps) out += render_step({Direction::Forward, st}, fmt);
  const char* status = result.normal ? "normal" : "exhausted";
  std::string last = print(result.term);
  out += emit(fmt, {"result", status, last}, json{{"record", "result"}, {"status", status}, {"term", last}});
  return out;
}

std::string render_conversion(const std::string& section, const Conversion& c, RecordFormat fmt) {
  std::string out;
  std::string start = print(c.start);
  std::string finish = print(c.finish);
  out += emit(fmt, {"section", section, start, finish, std::to_string(c.steps.size())},
              json{{"record", "section"},
                   {"name", section},
                   {"start", start},
                   {"finish", finish},
                   {"count", c.steps.size()}});
  for (const auto& cs : c.steps) out += render_step(cs, fmt);
  return out;
}

std::string render_certificate(const LeastFixpointCertificate& cert, RecordFormat fmt) {
  std::string out;
  std::string f = print(cert.f);
  std::string m = print(cert.m);
  std::string n = print(cert.n);
  std::string nf = print(cert.normal_form);
  if (fmt == RecordFormat::Text) {
    out += line_of({"lfp-certificate", "1"});
    out += line_of({"family", family_tag(cert.family)});
    out += line_of({"rule", base_tag(cert.base)});
    out += line_of({"f", f});
    out += line_of({"m", m});
    out += line_of({"n", n});
    out += line_of({"fix-var", cert.y});
    out += line_of({"normal-form", nf});
  } else {
    out += json{{"record", "certificate"},
                {"version", 1},
                {"family", family_tag(cert.family)},
                {"rule", base_tag(cert.base)},
                {"f", f},
                {"m", m},
                {"n", n},
                {"fix_var", cert.y},
                {"normal_form", nf}}
               .dump() +
           "\n";
  }
  Term comb_start = app(app(family_combinator(cert.family), cert.f), cert.n);
  out += render_conversion("fixpoint-witness", cert.fixpoint_witness, fmt);
  out += render_conversion("main-conversion", cert.main_conversion, fmt);
  out += render_conversion("combinator-trace", Conversion::forward(comb_start, cert.combinator_trace), fmt);
  out += render_conversion("lifted-trace", Conversion::forward(app(var(cert.y), cert.n), cert.lifted_trace), fmt);
  out += emit(fmt, {"end"}, json{{"record", "end"}});
  return out;
}

namespace {

// One record normalized from either format.
struct Record {
  std::size_t line;
  std::string kind;
  std::map<std::string, std::string> fields;
  Path path;
};

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

Record text_record(std::string_view line, std::size_t no) {
  auto f = split_tabs(line);
  Record r{no, f[0], {}, {}};
  auto need = [&](std::size_t n) {
    if (f.size() != n) throw RecordError("'" + r.kind + "' expects " + std::to_string(n - 1) + " fields", no);
  };
  if (r.kind == "step") {
    need(6);
    r.fields = {{"from", f[1]}, {"rule", f[3]}, {"dir", f[4]}, {"to", f[5]}};
    r.path = path_from_text(f[2]);
  } else if (r.kind == "section") {
    need(5);
    r.fields = {{"name", f[1]}, {"start", f[2]}, {"finish", f[3]}, {"count", f[4]}};
  } else if (r.kind == "lfp-certificate") {
    need(2);
    r.kind = "certificate";
    r.fields = {{"version", f[1]}};
  } else if (r.kind == "end") {
    need(1);
  } else {
    need(2);
    r.fields = {{"value", f[1]}};
  }
  return r;
}

Record json_record(std::string_view line, std::size_t no) {
  json j = json::parse(line);
  Record r{no, j.at("record").get<std::string>(), {}, {}};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "record") continue;
    if (it.key() == "path") {
      for (const auto& tok : it.value()) r.path.push_back(dir_from_token(tok.get<std::string>()));
    } else if (it.value().is_string()) {
      r.fields[it.key()] = it.value().get<std::string>();
    } else {
      r.fields[it.key()] = it.value().dump();
    }
  }
  return r;
}

class CertificateReader {
 public:
  explicit CertificateReader(std::vector<Record> records) : records_(std::move(records)) {}

  LeastFixpointCertificate read() {
    const Record& head = next("certificate");
    std::map<std::string, std::string> header;
    if (head.fields.count("family")) {
      header = head.fields;  // json-lines header carries everything
    } else {
      for (const char* key : {"family", "rule", "f", "m", "n", "fix-var", "normal-form"}) {
        header[key] = next(key).fields.at("value");
      }
      header["fix_var"] = header["fix-var"];
      header["normal_form"] = header["normal-form"];
    }
    auto family = parse_family(field(header, "family", head));
    auto base = parse_base(field(header, "rule", head));
    if (!family) throw RecordError("unknown family", head.line);
    if (!base) throw RecordError("unknown rule set", head.line);
    Term f = term(field(header, "f", head), head);
    Term m = term(field(header, "m", head), head);
    Term n = term(field(header, "n", head), head);
    Name y = field(header, "fix_var", head);
    if (!is_identifier(y)) throw RecordError("fixed-point variable is not an identifier", head.line);
    Term nf = term(field(header, "normal_form", head), head);

    Conversion fw = section("fixpoint-witness");
    Conversion mc = section("main-conversion");
    Conversion ct = section("combinator-trace");
    Conversion lt = section("lifted-trace");
    next("end");
    if (pos_ != records_.size()) throw RecordError("trailing records after end", records_[pos_].line);
    return LeastFixpointCertificate{*family, *base, f, m, n, y, nf, fw, mc, forward_steps(ct), forward_steps(lt)};
  }

 private:
  const Record& next(const std::string& kind) {
    if (pos_ >= records_.size()) throw RecordError("missing '" + kind + "' record", records_.empty() ? 0 : records_.back().line);
    const Record& r = records_[pos_];
    if (r.kind != kind) throw RecordError("expected '" + kind + "', found '" + r.kind + "'", r.line);
    ++pos_;
    return r;
  }

  static const std::string& field(const std::map<std::string, std::string>& m, const std::string& key,
                                  const Record& r) {
    auto it = m.find(key);
    if (it == m.end()) throw RecordError("missing field '" + key + "'", r.line);
    return it->second;
  }

  static Term term(const std::string& src, const Record& r) {
    try {
      return parse(src);
    } catch (const SyntaxError& e) {
      throw RecordError(std::string("bad term: ") + e.what(), r.line);
    }
  }

  Conversion section(const std::string& name) {
    const Record& head = next("section");
    if (field(head.fields, "name", head) != name) throw RecordError("expected section '" + name + "'", head.line);
    Conversion c{term(field(head.fields, "start", head), head), term(field(head.fields, "finish", head), head), {}};
    std::size_t count = 0;
    try {
      count = std::stoul(field(head.fields, "count", head));
    } catch (const std::logic_error&) {
      throw RecordError("bad step count", head.line);
    }
    for (std::size_t i = 0; i < count; ++i) {
      const Record& r = next("step");
      auto kind = parse_redex_tag(field(r.fields, "rule", r));
      if (!kind) throw RecordError("unknown rule tag", r.line);
      const std::string& dir = field(r.fields, "dir", r);
      if (dir != "fwd" && dir != "bwd") throw RecordError("unknown direction", r.line);
      Term from = term(field(r.fields, "from", r), r);
      Term to = term(field(r.fields, "to", r), r);
      if (dir == "fwd") {
        c.steps.push_back({Direction::Forward, Step{from, r.path, *kind, to}});
      } else {
        c.steps.push_back({Direction::Backward, Step{to, r.path, *kind, from}});
      }
    }
    return c;
  }

  static std::vector<Step> forward_steps(const Conversion& c) {
    std::vector<Step> out;
    for (const auto& cs : c.steps) {
      // A backward record in a reduction section is kept as-is; the checker
      // then sees a chain break and rejects it.
      out.push_back(cs.direction == Direction::Forward ? cs.step : Step{cs.step.target, cs.step.path, cs.step.kind, cs.step.source});
    }
    return out;
  }

  std::vector<Record> records_;
  std::size_t pos_ = 0;
};

}  // namespace

LeastFixpointCertificate read_certificate(std::string_view text) {
  std::vector<Record> records;
  std::size_t no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    try {
      records.push_back(line.front() == '{' ? json_record(line, no) : text_record(line, no));
    } catch (const json::exception& e) {
      throw RecordError(e.what(), no);
    } catch (const std::invalid_argument& e) {
      throw RecordError(e.what(), no);
    }
  }
  return CertificateReader(std::move(records)).read();
}

std::string render_lift_dump(const LiftResult& result) {
  DescriptorTable table;
  std::string out;
  for (std::size_t i = 0; i < result.states.size(); ++i) {
    out += line_of({"state", std::to_string(i), print(result.states[i].tracked, table), print(result.states[i].plain)});
  }
  for (std::size_t k = 0; k < table.tags().size(); ++k) {
    const auto& tag = table.tags()[k];
    const UpsilonElem& e = upsilon_of(*tag);
    out += line_of({"descriptor", std::to_string(k), tag->describe()});
    auto witness = [&](const char* which, const Term& start, const std::vector<Step>& w) {
      for (const auto& s : w) {
        out += "witness\t" + std::to_string(k) + "\t" + which + "\t" + render_step({Direction::Forward, s}, RecordFormat::Text);
      }
      (void)start;
    };
    std::visit(
        [&](const auto& form) {
          using F = std::decay_t<decltype(form)>;
          if constexpr (std::is_same_v<F, YnForm>) {
            witness("f", e.base_f(), form.f_witness);
          } else if constexpr (std::is_same_v<F, PairForm>) {
            witness("left", e.hole_application(), form.left_witness);
            witness("right", e.hole_application(), form.right_witness);
          } else {
            witness("theta", theta(), form.t_witness);
            witness("f", e.base_f(), form.f_witness);
          }
        },
        e.form());
  }
  return out;
}

}  // namespace lfp
