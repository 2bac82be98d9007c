#include "tfdcs/model_json.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tfdcs/errors.hpp"

namespace tfdcs {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& context) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (known.find(it.key()) == known.end()) {
      throw config_error("unknown key '" + it.key() + "' in " + context);
    }
  }
}

std::vector<double> read_list(const json& obj, const std::string& key) {
  const json& arr = obj.at(key);
  if (!arr.is_array()) {
    throw config_error("model key '" + key + "' must be an array");
  }
  std::vector<double> out;
  for (const auto& v : arr) {
    if (!v.is_number()) {
      throw config_error("model key '" + key + "' must contain numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

DeformedModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("model file is not valid JSON: ") +
                       e.what());
  }
  if (!doc.is_object()) {
    throw config_error("model document must be a JSON object");
  }
  reject_unknown_keys(doc, {"p", "q", "a", "b", "hbar_omega", "spectrum"},
                      "model document");
  for (const char* key : {"p", "q", "a", "b", "hbar_omega", "spectrum"}) {
    if (!doc.contains(key)) {
      throw config_error(std::string("model document is missing key '") +
                         key + "'");
    }
  }

  const auto a = read_list(doc, "a");
  const auto b = read_list(doc, "b");
  if (!doc["p"].is_number_integer() ||
      doc["p"].get<long>() != static_cast<long>(a.size())) {
    throw config_error("model key 'p' must equal the length of 'a'");
  }
  if (!doc["q"].is_number_integer() ||
      doc["q"].get<long>() != static_cast<long>(b.size())) {
    throw config_error("model key 'q' must equal the length of 'b'");
  }
  if (!doc["hbar_omega"].is_number()) {
    throw config_error("model key 'hbar_omega' must be a number");
  }

  const json& spectrum_json = doc["spectrum"];
  if (!spectrum_json.is_object()) {
    throw config_error("model key 'spectrum' must be an object");
  }
  reject_unknown_keys(spectrum_json, {"kind", "E0"}, "spectrum");
  if (!spectrum_json.contains("kind") || !spectrum_json["kind"].is_string()) {
    throw config_error("spectrum requires a string key 'kind'");
  }
  const std::string kind = spectrum_json["kind"].get<std::string>();
  Spectrum spectrum;
  if (kind == "generalized") {
    spectrum.kind = SpectrumKind::Generalized;
    if (spectrum_json.contains("E0")) {
      throw config_error("spectrum key 'E0' applies to linear spectra only");
    }
  } else if (kind == "linear") {
    spectrum.kind = SpectrumKind::Linear;
    if (spectrum_json.contains("E0")) {
      if (!spectrum_json["E0"].is_number()) {
        throw config_error("spectrum key 'E0' must be a number");
      }
      spectrum.E0 = spectrum_json["E0"].get<double>();
    }
  } else {
    throw config_error("spectrum kind must be 'generalized' or 'linear'");
  }

  try {
    return DeformedModel(specfun::ParamLists(a, b),
                         doc["hbar_omega"].get<double>(), spectrum);
  } catch (const numeric_error& e) {
    throw config_error(std::string("model rejected: ") + e.what());
  }
}

DeformedModel model_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open model file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

std::string model_to_json(const DeformedModel& model) {
  nlohmann::ordered_json doc;
  doc["p"] = model.params().p();
  doc["q"] = model.params().q();
  doc["a"] = model.params().a;
  doc["b"] = model.params().b;
  doc["hbar_omega"] = model.hbar_omega();
  nlohmann::ordered_json spectrum_json;
  if (model.spectrum().kind == SpectrumKind::Generalized) {
    spectrum_json["kind"] = "generalized";
  } else {
    spectrum_json["kind"] = "linear";
    spectrum_json["E0"] = model.spectrum().E0;
  }
  doc["spectrum"] = std::move(spectrum_json);
  return doc.dump(2) + "\n";
}

}  // namespace tfdcs
