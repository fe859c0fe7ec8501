#include <algorithm>

#include <json.hpp>

#include "lassynt/tsys.hpp"

namespace lassynt {

using nlohmann::json;

std::string system_to_json(const TransitionSystem &sys, int indent) {
  json labels = json::array(), trans = json::array();
  for (std::size_t t = 0; t < sys.num_states; ++t) {
    json atoms = json::array();
    for (std::size_t o = 0; o < sys.outputs.size(); ++o)
      if ((sys.labels[t] >> o) & 1)
        atoms.push_back(sys.outputs[o]);
    labels.push_back(std::move(atoms));
    json row = json::array();
    for (std::size_t i = 0; i < sys.num_letters(); ++i)
      row.push_back(sys.next(static_cast<std::uint32_t>(t), static_cast<Letter>(i)));
    trans.push_back(std::move(row));
  }
  json j = {{"states", sys.num_states},
            {"inputs", sys.inputs},
            {"outputs", sys.outputs},
            {"labels", std::move(labels)},
            {"trans", std::move(trans)}};
  return j.dump(indent);
}

TransitionSystem system_from_json(std::string_view text) {
  TransitionSystem sys;
  try {
    const json j = json::parse(text);
    sys.num_states = j.at("states").get<std::size_t>();
    sys.inputs = j.at("inputs").get<std::vector<std::string>>();
    sys.outputs = j.at("outputs").get<std::vector<std::string>>();
    const auto &labels = j.at("labels");
    const auto &trans = j.at("trans");
    if (labels.size() != sys.num_states || trans.size() != sys.num_states)
      throw std::invalid_argument("labels/trans must have one row per state");
    for (const auto &row : labels) {
      Letter mask = 0;
      for (const auto &a : row) {
        const auto name = a.get<std::string>();
        auto it = std::find(sys.outputs.begin(), sys.outputs.end(), name);
        if (it == sys.outputs.end())
          throw std::invalid_argument("label '" + name + "' is not an output");
        mask |= Letter{1} << (it - sys.outputs.begin());
      }
      sys.labels.push_back(mask);
    }
    for (const auto &row : trans) {
      if (row.size() != sys.num_letters())
        throw std::invalid_argument("each trans row needs one successor per input letter");
      for (const auto &s : row)
        sys.trans.push_back(s.get<std::uint32_t>());
    }
  } catch (const json::exception &e) {
    throw std::invalid_argument(std::string("malformed system JSON: ") + e.what());
  }
  sys.validate();
  return sys;
}

}  // namespace lassynt
