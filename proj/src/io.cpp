#include "strata/io.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace strata {

namespace {

std::string trim(std::string s) {
  const char* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::int64_t parse_count(const std::string& field, const char* what) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(field, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("parse_input: bad ") + what +
                                " value '" + field + "'");
  }
  if (pos != field.size())
    throw std::invalid_argument(std::string("parse_input: bad ") + what +
                                " value '" + field + "'");
  return v;
}

GroupedData parse_json(std::string_view bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("parse_input: invalid JSON: ") +
                                e.what());
  }
  if (!doc.is_object() || !doc.contains("g"))
    throw std::invalid_argument("parse_input: expected an object with key \"g\"");
  const auto& arr = doc["g"];
  if (!arr.is_array() || arr.size() != 4)
    throw std::invalid_argument("parse_input: \"g\" must hold four counts");
  std::array<std::int64_t, 4> g{};
  for (int i = 0; i < 4; ++i) {
    if (!arr[i].is_number_integer())
      throw std::invalid_argument("parse_input: counts must be integers");
    g[i] = arr[i].get<std::int64_t>();
  }
  return GroupedData::from_array(g);
}

GroupedData parse_csv(std::string_view bytes) {
  std::istringstream in{std::string(bytes)};
  std::string line;
  std::vector<std::array<std::string, 3>> rows;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::array<std::string, 3> fields;
    std::size_t start = 0;
    for (int f = 0; f < 3; ++f) {
      const std::size_t comma = line.find(',', start);
      if (f < 2 && comma == std::string::npos)
        throw std::invalid_argument("parse_input: CSV row needs 3 fields: '" +
                                    line + "'");
      if (f == 2 && comma != std::string::npos)
        throw std::invalid_argument("parse_input: CSV row has extra fields: '" +
                                    line + "'");
      fields[f] = trim(f < 2 ? line.substr(start, comma - start)
                             : line.substr(start));
      start = comma + 1;
    }
    rows.push_back(fields);
  }
  if (rows.empty() || rows[0] != std::array<std::string, 3>{"z", "d", "count"})
    throw std::invalid_argument("parse_input: CSV must start with header z,d,count");
  rows.erase(rows.begin());
  if (rows.size() != 4)
    throw std::invalid_argument("parse_input: CSV needs the four (z,d) rows");

  std::array<std::int64_t, 4> g{};
  std::array<bool, 4> seen{};
  for (const auto& row : rows) {
    const std::int64_t z = parse_count(row[0], "z");
    const std::int64_t d = parse_count(row[1], "d");
    const std::int64_t count = parse_count(row[2], "count");
    if ((z != 0 && z != 1) || (d != 0 && d != 1))
      throw std::invalid_argument("parse_input: z and d must be 0 or 1");
    // (1,1)->g1 (1,0)->g2 (0,1)->g3 (0,0)->g4
    const int cell = z == 1 ? (d == 1 ? 0 : 1) : (d == 1 ? 2 : 3);
    if (seen[cell])
      throw std::invalid_argument("parse_input: duplicate (z,d) row");
    seen[cell] = true;
    g[cell] = count;
  }
  return GroupedData::from_array(g);
}

}  // namespace

GroupedData parse_input(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[i])))
    ++i;
  if (i == bytes.size())
    throw std::invalid_argument("parse_input: empty input");
  const GroupedData g =
      bytes[i] == '{' ? parse_json(bytes) : parse_csv(bytes);
  require_nonnegative(g);
  require_sample(g);
  return g;
}

GroupedData load_grouped(const std::string& path) {
  return parse_input(read_file(path));
}

std::string emit_grouped_json(const GroupedData& g) {
  nlohmann::ordered_json doc;
  doc["g"] = g.as_array();
  return doc.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace strata
