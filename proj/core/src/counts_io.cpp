#include "nonlocal/counts_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nonlocal {

using nlohmann::json;

namespace {

int require_int(const json& j, const char* field, const std::string& where) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw SchemaError("counts file: " + where + " needs integer field '" +
                      field + "'");
  return j[field].get<int>();
}

}  // namespace

CountsRecord parse_counts(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("counts file: ") + e.what());
  }
  if (!root.is_object() || !root.contains("dims") || !root.contains("blocks"))
    throw SchemaError("counts file: top level must have 'dims' and 'blocks'");

  CountsRecord rec;
  const json& jd = root["dims"];
  rec.dims.nx = require_int(jd, "nx", "dims");
  rec.dims.ny = require_int(jd, "ny", "dims");
  rec.dims.na = require_int(jd, "na", "dims");
  rec.dims.nb = require_int(jd, "nb", "dims");
  try {
    rec.dims.validate();
  } catch (const InvalidParameter& e) {
    throw SchemaError(std::string("counts file: ") + e.what());
  }

  const int n = rec.dims.entries();
  rec.counts.assign(n, -1);  // -1 flags a block not yet seen
  std::vector<double> background(n, 0.0);
  bool any_background = false;

  if (!root["blocks"].is_array())
    throw SchemaError("counts file: 'blocks' must be an array");
  for (const json& blk : root["blocks"]) {
    const int x = require_int(blk, "x", "block");
    const int y = require_int(blk, "y", "block");
    const std::string where =
        "block (" + std::to_string(x) + "," + std::to_string(y) + ")";
    if (x < 1 || x > rec.dims.nx || y < 1 || y > rec.dims.ny)
      throw SchemaError("counts file: " + where + " outside dims");
    if (rec.counts[rec.dims.index(x - 1, y - 1, 0, 0)] >= 0)
      throw SchemaError("counts file: " + where + " appears more than once");

    if (!blk.contains("counts") || !blk["counts"].is_array() ||
        static_cast<int>(blk["counts"].size()) != rec.dims.na)
      throw SchemaError("counts file: " + where + " needs 'counts' with " +
                        std::to_string(rec.dims.na) + " rows");
    for (int a = 0; a < rec.dims.na; ++a) {
      const json& row = blk["counts"][a];
      if (!row.is_array() || static_cast<int>(row.size()) != rec.dims.nb)
        throw SchemaError("counts file: " + where + " counts row " +
                          std::to_string(a) + " needs " +
                          std::to_string(rec.dims.nb) + " columns");
      for (int b = 0; b < rec.dims.nb; ++b) {
        if (!row[b].is_number_integer())
          throw SchemaError("counts file: " + where + " count at (a=" +
                            std::to_string(a) + ",b=" + std::to_string(b) +
                            ") is not an integer");
        const std::int64_t v = row[b].get<std::int64_t>();
        if (v < 0)
          throw SchemaError("counts file: negative count at (x=" +
                            std::to_string(x) + ",y=" + std::to_string(y) +
                            ",a=" + std::to_string(a) + ",b=" +
                            std::to_string(b) + ")");
        rec.counts[rec.dims.index(x - 1, y - 1, a, b)] = v;
      }
    }
    if (blk.contains("background")) {
      any_background = true;
      const json& bg = blk["background"];
      if (!bg.is_array() || static_cast<int>(bg.size()) != rec.dims.na)
        throw SchemaError("counts file: " + where + " background needs " +
                          std::to_string(rec.dims.na) + " rows");
      for (int a = 0; a < rec.dims.na; ++a) {
        const json& row = bg[a];
        if (!row.is_array() || static_cast<int>(row.size()) != rec.dims.nb)
          throw SchemaError("counts file: " + where + " background row " +
                            std::to_string(a) + " needs " +
                            std::to_string(rec.dims.nb) + " columns");
        for (int b = 0; b < rec.dims.nb; ++b) {
          if (!row[b].is_number())
            throw SchemaError("counts file: " + where +
                              " background entry is not a number");
          const double v = row[b].get<double>();
          if (v < 0.0)
            throw SchemaError("counts file: negative background at (x=" +
                              std::to_string(x) + ",y=" + std::to_string(y) +
                              ",a=" + std::to_string(a) + ",b=" +
                              std::to_string(b) + ")");
          background[rec.dims.index(x - 1, y - 1, a, b)] = v;
        }
      }
    }
  }

  for (int x = 0; x < rec.dims.nx; ++x)
    for (int y = 0; y < rec.dims.ny; ++y)
      if (rec.counts[rec.dims.index(x, y, 0, 0)] < 0)
        throw SchemaError("counts file: block (" + std::to_string(x + 1) + "," +
                          std::to_string(y + 1) + ") is missing");

  if (any_background) rec.background = std::move(background);
  return rec;
}

CountsRecord load_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("counts file: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_counts(buf.str());
}

std::string counts_to_json(const CountsRecord& c) {
  c.dims.validate();
  json root;
  root["dims"] = {{"nx", c.dims.nx}, {"ny", c.dims.ny},
                  {"na", c.dims.na}, {"nb", c.dims.nb}};
  json blocks = json::array();
  for (int x = 0; x < c.dims.nx; ++x)
    for (int y = 0; y < c.dims.ny; ++y) {
      json blk;
      blk["x"] = x + 1;
      blk["y"] = y + 1;
      json counts = json::array();
      for (int a = 0; a < c.dims.na; ++a) {
        json row = json::array();
        for (int b = 0; b < c.dims.nb; ++b)
          row.push_back(c.counts[c.dims.index(x, y, a, b)]);
        counts.push_back(row);
      }
      blk["counts"] = counts;
      if (c.background) {
        json bg = json::array();
        for (int a = 0; a < c.dims.na; ++a) {
          json row = json::array();
          for (int b = 0; b < c.dims.nb; ++b)
            row.push_back((*c.background)[c.dims.index(x, y, a, b)]);
          bg.push_back(row);
        }
        blk["background"] = bg;
      }
      blocks.push_back(blk);
    }
  root["blocks"] = blocks;
  return root.dump(2);
}

void save_counts(const CountsRecord& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("counts file: cannot write '" + path + "'");
  out << counts_to_json(c) << "\n";
}

}  // namespace nonlocal
