#include <charconv>
#include <fstream>
#include <system_error>

#include "avrsa/sweep.hpp"
#include "json.hpp"

namespace avrsa {

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.mode;
    for (double x : {r.load_erlang, r.avg_avail, r.a_th}) {
      out += ',';
      out += format_number(x);
    }
    out += ',';
    out += std::to_string(r.seed);
    for (double x : {r.bp, r.bbp, r.utilization, r.protection_capacity}) {
      out += ',';
      out += format_number(x);
    }
    out += ',';
    if (r.restorability) out += format_number(*r.restorability);
    out += ',';
    out += format_number(r.runtime_s);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_field(std::string_view f, std::size_t line, const char* column) {
  T v{};
  auto res = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
    throw ParseError(line, std::string("bad ") + column + " '" + std::string(f) + "'");
  }
  return v;
}

}  // namespace

std::vector<ResultRow> parse_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError(line_no, "unexpected header");
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 11) throw ParseError(line_no, "expected 11 fields");
    ResultRow r;
    r.mode = std::string(f[0]);
    r.load_erlang = parse_field<double>(f[1], line_no, "load_erlang");
    r.avg_avail = parse_field<double>(f[2], line_no, "avg_avail");
    r.a_th = parse_field<double>(f[3], line_no, "a_th");
    r.seed = parse_field<std::uint64_t>(f[4], line_no, "seed");
    r.bp = parse_field<double>(f[5], line_no, "bp");
    r.bbp = parse_field<double>(f[6], line_no, "bbp");
    r.utilization = parse_field<double>(f[7], line_no, "utilization");
    r.protection_capacity = parse_field<double>(f[8], line_no, "protection_capacity");
    if (!f[9].empty()) r.restorability = parse_field<double>(f[9], line_no, "restorability");
    r.runtime_s = parse_field<double>(f[10], line_no, "runtime_s");
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError(1, "missing header");
  return rows;
}

std::string to_json(const SweepResult& result) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"mode", r.mode},
                    {"load_erlang", r.load_erlang},
                    {"avg_avail", r.avg_avail},
                    {"a_th", r.a_th},
                    {"seed", r.seed},
                    {"bp", r.bp},
                    {"bbp", r.bbp},
                    {"utilization", r.utilization},
                    {"protection_capacity", r.protection_capacity},
                    {"restorability", r.restorability ? json(*r.restorability) : json(nullptr)},
                    {"runtime_s", r.runtime_s}});
  }
  json errors = json::array();
  for (const auto& e : result.errors) {
    errors.push_back({{"mode", e.mode},
                      {"load_erlang", e.load_erlang},
                      {"avg_avail", e.avg_avail},
                      {"a_th", e.a_th},
                      {"seed", e.seed},
                      {"message", e.message}});
  }
  return json{{"rows", rows}, {"errors", errors}}.dump(2) + "\n";
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace avrsa
