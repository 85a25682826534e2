#include "collide/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace collide {

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string format_csv(std::span<const SweepRow> rows, std::span<const Quantity> quantities) {
  std::string out = "nbar,gamma_tau";
  for (Quantity q : quantities) out += "," + to_string(q);
  out += ",status\n";
  for (const auto& row : rows) {
    out += number(row.nbar) + "," + number(row.gamma_tau);
    for (double v : row.values) out += "," + number(v);
    out += "," + to_string(row.status) + "\n";
  }
  return out;
}

std::string format_json(std::span<const SweepRow> rows, std::span<const Quantity> quantities) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    obj["nbar"] = row.nbar;
    obj["gamma_tau"] = row.gamma_tau;
    for (size_t k = 0; k < quantities.size(); ++k) {
      const double v = row.values[k];
      if (std::isfinite(v)) {
        obj[to_string(quantities[k])] = v;
      } else {
        obj[to_string(quantities[k])] = nullptr;
      }
    }
    obj["status"] = to_string(row.status);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

void write_output(std::span<const SweepRow> rows, std::span<const Quantity> quantities,
                  OutputFormat format, const std::string& path) {
  const std::string text =
      format == OutputFormat::Csv ? format_csv(rows, quantities) : format_json(rows, quantities);
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace collide
