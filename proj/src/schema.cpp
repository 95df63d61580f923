#include "setlab/schema.hpp"

#include "setlab/schema_text.hpp"

namespace setlab {

namespace {

std::string show(const Json& j) {
  std::string s = j.dump();
  return s.size() > 40 ? s.substr(0, 37) + "..." : s;
}

bool has_type(const Json& doc, const std::string& type) {
  if (type == "object") return doc.is_object();
  if (type == "array") return doc.is_array();
  if (type == "string") return doc.is_string();
  if (type == "integer") return doc.is_number_integer();
  if (type == "number") return doc.is_number();
  if (type == "boolean") return doc.is_boolean();
  if (type == "null") return doc.is_null();
  return false;
}

class Validator {
 public:
  explicit Validator(const Json& root) : root_(root) {}

  void check(const Json& schema, const Json& doc, const std::string& path) {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) fail(path, "no value is allowed here");
      return;
    }
    if (auto ref = schema.find("$ref"); ref != schema.end()) {
      check(resolve(ref->get<std::string>()), doc, path);
      return;
    }
    if (auto t = schema.find("type"); t != schema.end()) {
      bool ok = false;
      if (t->is_array()) {
        for (const auto& one : *t) ok = ok || has_type(doc, one.get<std::string>());
      } else {
        ok = has_type(doc, t->get<std::string>());
      }
      if (!ok) {
        fail(path, "expected type " + t->dump() + ", got " + show(doc));
        return;
      }
    }
    if (auto e = schema.find("enum"); e != schema.end()) {
      bool found = false;
      for (const auto& v : *e) found = found || v == doc;
      if (!found) fail(path, show(doc) + " is not one of " + e->dump());
    }
    if (doc.is_number()) {
      const double v = doc.get<double>();
      if (auto m = schema.find("minimum"); m != schema.end() && v < m->get<double>())
        fail(path, show(doc) + " is below the minimum " + m->dump());
      if (auto m = schema.find("maximum"); m != schema.end() && v > m->get<double>())
        fail(path, show(doc) + " is above the maximum " + m->dump());
    }
    if (doc.is_array()) {
      if (auto m = schema.find("minItems"); m != schema.end() && doc.size() < m->get<std::size_t>())
        fail(path, "needs at least " + m->dump() + " items");
      if (auto m = schema.find("maxItems"); m != schema.end() && doc.size() > m->get<std::size_t>())
        fail(path, "allows at most " + m->dump() + " items");
      if (auto items = schema.find("items"); items != schema.end())
        for (std::size_t i = 0; i < doc.size(); ++i) check(*items, doc[i], path + "/" + std::to_string(i));
    }
    if (doc.is_object()) {
      if (auto req = schema.find("required"); req != schema.end())
        for (const auto& key : *req)
          if (!doc.contains(key.get<std::string>()))
            fail(path + "/" + key.get<std::string>(), "required field is missing");
      const auto props = schema.find("properties");
      const auto extra = schema.find("additionalProperties");
      for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string child = path + "/" + it.key();
        if (props != schema.end() && props->contains(it.key())) {
          check((*props)[it.key()], it.value(), child);
        } else if (extra != schema.end()) {
          if (extra->is_boolean() && !extra->get<bool>()) fail(child, "unknown key");
          else if (extra->is_object()) check(*extra, it.value(), child);
        }
      }
    }
  }

  std::vector<SchemaViolation> violations;

 private:
  const Json& resolve(const std::string& ref) {
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) throw std::invalid_argument("unsupported $ref '" + ref + "'");
    return root_.at("$defs").at(ref.substr(prefix.size()));
  }

  void fail(const std::string& path, std::string message) {
    violations.push_back({path.empty() ? "/" : path, std::move(message)});
  }

  const Json& root_;
};

}  // namespace

std::vector<SchemaViolation> validate_schema(const Json& schema, const Json& doc) {
  Validator v(schema);
  v.check(schema, doc, "");
  return std::move(v.violations);
}

const Json& run_config_schema() {
  static const Json schema = Json::parse(kRunConfigSchema);
  return schema;
}

}  // namespace setlab
