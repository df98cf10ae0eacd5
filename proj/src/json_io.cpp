#include "mgi/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "mgi/error.hpp"

namespace mgi {
namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw json_parse_error(e.byte, e.what());
  }
}

[[noreturn]] void schema_fail(const std::string& message) {
  throw json_parse_error(0, message);
}

const json& need(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    schema_fail(std::string("missing field \"") + key + "\"");
  }
  return doc.at(key);
}

std::uint32_t need_uint(const json& doc, const char* key) {
  const json& v = need(doc, key);
  if (!v.is_number_unsigned()) {
    schema_fail(std::string("field \"") + key +
                "\" must be a non-negative integer");
  }
  return v.get<std::uint32_t>();
}

RingSpec need_ring(const json& doc) {
  const json& v = need(doc, "ring");
  if (!v.is_string()) schema_fail("field \"ring\" must be a string");
  try {
    return parse_ring(v.get<std::string>());
  } catch (const std::exception& e) {
    schema_fail(std::string("bad ring spec: ") + e.what());
  }
}

RingElem elem_from_value(const RingSpec& spec, const json& v,
                         const char* where) {
  try {
    if (v.is_string()) return elem_from_string(spec, v.get<std::string>());
    if (v.is_number_integer()) {
      return ring_of(spec, v.get<long long>());
    }
  } catch (const json_parse_error&) {
    throw;
  } catch (const std::exception& e) {
    schema_fail(std::string("bad element in ") + where + ": " + e.what());
  }
  schema_fail(std::string("element in ") + where +
              " must be a string or an integer");
}

FinAbGroup group_from_array(const json& v, const char* key) {
  if (!v.is_array() || v.empty()) {
    schema_fail(std::string("field \"") + key +
                "\" must be a non-empty array of positive integers");
  }
  FinAbGroup g;
  for (const json& o : v) {
    if (!o.is_number_unsigned() || o.get<std::uint64_t>() == 0) {
      schema_fail(std::string("field \"") + key +
                  "\" must contain positive integers");
    }
    g.orders.push_back(o.get<std::uint32_t>());
  }
  return g;
}

std::string tuple_to_string(const FinAbGroup& g, std::uint32_t index) {
  const std::vector<std::uint32_t> t = g.tuple(index);
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

std::uint32_t tuple_from_string(const FinAbGroup& g, const std::string& s,
                                const char* where) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    schema_fail(std::string(where) + " tuple must look like \"(1,0)\", got \"" +
                s + "\"");
  }
  std::vector<std::uint32_t> t;
  std::uint64_t cur = 0;
  bool have_digit = false;
  for (std::size_t i = 1; i + 1 <= s.size() - 1; ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      cur = cur * 10 + static_cast<std::uint64_t>(c - '0');
      have_digit = true;
      if (cur > 0xffffffffull) schema_fail("tuple coordinate overflows");
    } else if (c == ',') {
      if (!have_digit) schema_fail("empty tuple coordinate");
      t.push_back(static_cast<std::uint32_t>(cur));
      cur = 0;
      have_digit = false;
    } else {
      schema_fail(std::string("unexpected character '") + c + "' in tuple \"" +
                  s + "\"");
    }
  }
  if (!have_digit) schema_fail("empty tuple coordinate");
  t.push_back(static_cast<std::uint32_t>(cur));
  if (t.size() != g.orders.size()) {
    schema_fail(std::string(where) + " tuple \"" + s + "\" has " +
                std::to_string(t.size()) + " coordinates, expected " +
                std::to_string(g.orders.size()));
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= g.orders[i]) {
      schema_fail(std::string(where) + " tuple \"" + s +
                  "\" has coordinate " + std::to_string(t[i]) +
                  " outside Z/" + std::to_string(g.orders[i]));
    }
  }
  return g.index(t);
}

json cocycle_to_value(const Cocycle& f) {
  json table = json::object();
  const std::uint32_t bs = static_cast<std::uint32_t>(f.domain.size());
  for (std::uint32_t x = 0; x < bs; ++x) {
    for (std::uint32_t y = 0; y < bs; ++y) {
      const std::uint32_t v = f.at(x, y);
      if (v == 0) continue;  // omitted keys default to the identity
      table[tuple_to_string(f.domain, x) + "|" + tuple_to_string(f.domain, y)] =
          tuple_to_string(f.codomain, v);
    }
  }
  json out;
  out["domain"] = f.domain.orders;
  out["codomain"] = f.codomain.orders;
  out["table"] = std::move(table);
  if (!f.symmetric_flag) out["symmetric"] = false;
  return out;
}

Cocycle cocycle_from_value(const json& doc) {
  if (!doc.is_object()) schema_fail("cocycle document must be an object");
  const FinAbGroup b = group_from_array(need(doc, "domain"), "domain");
  const FinAbGroup a = group_from_array(need(doc, "codomain"), "codomain");
  bool symmetric = true;
  if (doc.contains("symmetric")) {
    if (!doc.at("symmetric").is_boolean()) {
      schema_fail("field \"symmetric\" must be a boolean");
    }
    symmetric = doc.at("symmetric").get<bool>();
  }
  std::vector<std::uint32_t> table(b.size() * b.size(), 0);
  if (doc.contains("table")) {
    const json& t = doc.at("table");
    if (!t.is_object()) schema_fail("field \"table\" must be an object");
    for (const auto& item : t.items()) {
      const std::string& key = item.key();
      const std::size_t bar = key.find('|');
      if (bar == std::string::npos) {
        schema_fail("table key \"" + key +
                    "\" must be \"(x tuple)|(y tuple)\"");
      }
      const std::uint32_t x =
          tuple_from_string(b, key.substr(0, bar), "table key");
      const std::uint32_t y =
          tuple_from_string(b, key.substr(bar + 1), "table key");
      if (!item.value().is_string()) {
        schema_fail("table value for \"" + key + "\" must be a tuple string");
      }
      table[x * b.size() + y] =
          tuple_from_string(a, item.value().get<std::string>(), "table value");
    }
  }
  return make_cocycle(b, a, std::move(table), symmetric);
}

}  // namespace

std::string matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (std::uint32_t i = 1; i <= m.n(); ++i) {
    json row = json::array();
    for (std::uint32_t j = 1; j <= m.n(); ++j) {
      row.push_back(elem_to_string(m.ring(), m.at(i, j)));
    }
    entries.push_back(std::move(row));
  }
  json out;
  out["ring"] = ring_to_string(m.ring());
  out["n"] = m.n();
  out["entries"] = std::move(entries);
  return out.dump();
}

Matrix matrix_from_json(const std::string& text) {
  const json doc = parse_document(text);
  const RingSpec spec = need_ring(doc);
  const std::uint32_t n = need_uint(doc, "n");
  if (n == 0 || n > 16) schema_fail("matrix size must be between 1 and 16");
  const json& entries = need(doc, "entries");
  if (!entries.is_array() || entries.size() != n) {
    schema_fail("field \"entries\" must be an array of " + std::to_string(n) +
                " rows");
  }
  Matrix m = identity(spec, n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const json& row = entries.at(i);
    if (!row.is_array() || row.size() != n) {
      schema_fail("row " + std::to_string(i + 1) + " must have " +
                  std::to_string(n) + " entries");
    }
    for (std::uint32_t j = 0; j < n; ++j) {
      m.set(i + 1, j + 1, elem_from_value(spec, row.at(j), "entries"));
    }
  }
  return m;
}

std::string word_to_json(const TransvectionWord& w) {
  json letters = json::array();
  for (const WordLetter& l : w.letters) {
    letters.push_back(
        json::array({l.i, l.j, elem_to_string(w.spec, l.alpha)}));
  }
  json out;
  out["ring"] = ring_to_string(w.spec);
  out["n"] = w.n;
  out["letters"] = std::move(letters);
  if (w.diag) {
    json d;
    d["index"] = w.diag->index;
    d["value"] = elem_to_string(w.spec, w.diag->value);
    out["diag"] = std::move(d);
    if (w.diag_pos != w.letters.size()) out["pos"] = w.diag_pos;
  }
  return out.dump();
}

TransvectionWord word_from_json(const std::string& text) {
  const json doc = parse_document(text);
  TransvectionWord w;
  w.spec = need_ring(doc);
  w.n = need_uint(doc, "n");
  if (w.n < 2 || w.n > 16) schema_fail("word size must be between 2 and 16");
  const json& letters = need(doc, "letters");
  if (!letters.is_array()) schema_fail("field \"letters\" must be an array");
  for (const json& l : letters) {
    if (!l.is_array() || l.size() != 3 || !l.at(0).is_number_unsigned() ||
        !l.at(1).is_number_unsigned()) {
      schema_fail("each letter must be [i, j, alpha]");
    }
    WordLetter letter;
    letter.i = l.at(0).get<std::uint32_t>();
    letter.j = l.at(1).get<std::uint32_t>();
    if (letter.i < 1 || letter.i > w.n || letter.j < 1 || letter.j > w.n ||
        letter.i == letter.j) {
      schema_fail("letter indices must be distinct and within 1.." +
                  std::to_string(w.n));
    }
    letter.alpha = elem_from_value(w.spec, l.at(2), "letters");
    w.letters.push_back(std::move(letter));
  }
  w.diag_pos = w.letters.size();
  if (doc.contains("diag")) {
    const json& d = doc.at("diag");
    DiagFactor factor;
    factor.index = need_uint(d, "index");
    if (factor.index < 1 || factor.index > w.n) {
      schema_fail("diag index must be within 1.." + std::to_string(w.n));
    }
    factor.value = elem_from_value(w.spec, need(d, "value"), "diag");
    if (!is_unit(w.spec, factor.value)) {
      schema_fail("diag value must be a unit");
    }
    w.diag = std::move(factor);
    if (doc.contains("pos")) {
      if (!doc.at("pos").is_number_unsigned()) {
        schema_fail("field \"pos\" must be a non-negative integer");
      }
      w.diag_pos = doc.at("pos").get<std::size_t>();
      if (w.diag_pos > w.letters.size()) {
        schema_fail("field \"pos\" exceeds the letter count");
      }
    }
  } else if (doc.contains("pos")) {
    schema_fail("field \"pos\" requires a \"diag\" factor");
  }
  return w;
}

std::string cocycle_to_json(const Cocycle& f) { return cocycle_to_value(f).dump(); }

Cocycle cocycle_from_json(const std::string& text) {
  return cocycle_from_value(parse_document(text));
}

std::string deform_to_json(const DeformContext& ctx) {
  json out;
  out["ring"] = ring_to_string(ctx.ring);
  out["n"] = ctx.n;
  out["Z"] = ctx.z.orders;
  out["cocycle"] = cocycle_to_value(ctx.f);
  return out.dump();
}

DeformContext deform_from_json(const std::string& text) {
  const json doc = parse_document(text);
  const RingSpec spec = need_ring(doc);
  const std::uint32_t n = need_uint(doc, "n");
  const FinAbGroup z = group_from_array(need(doc, "Z"), "Z");
  if (doc.contains("cocycle")) {
    return make_deform_context(spec, n, z, cocycle_from_value(doc.at("cocycle")));
  }
  return make_deform_context(spec, n, z);
}

}  // namespace mgi
