#include "drawcouple/population.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "drawcouple/errors.hpp"

namespace drawcouple {

Population::Population(std::vector<double> weights, std::vector<double> values)
    : weights_(std::move(weights)), values_(std::move(values)) {
  if (weights_.empty()) throw InvalidInput("population is empty");
  if (weights_.size() != values_.size())
    throw InvalidInput("weights and values differ in length");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw InvalidInput("item " + std::to_string(i + 1) + " has non-positive weight");
    if (!std::isfinite(values_[i]))
      throw InvalidInput("item " + std::to_string(i + 1) + " has a non-finite value");
  }
  raw_weight_sum_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  for (double& w : weights_) w /= raw_weight_sum_;
}

Population Population::from_items(std::span<const Item> items) {
  if (items.empty()) throw InvalidInput("population is empty");
  const std::size_t n = items.size();
  std::vector<double> weights(n), values(n);
  std::vector<bool> seen(n, false);
  for (const Item& item : items) {
    if (item.id < 1 || static_cast<std::size_t>(item.id) > n)
      throw InvalidInput("item id " + std::to_string(item.id) + " outside 1.." +
                         std::to_string(n));
    const auto idx = static_cast<std::size_t>(item.id - 1);
    if (seen[idx]) throw InvalidInput("duplicate item id " + std::to_string(item.id));
    seen[idx] = true;
    if (!(item.weight > 0.0))
      throw InvalidInput("item " + std::to_string(item.id) + " has non-positive weight");
    weights[idx] = item.weight;
    values[idx] = item.value;
  }
  return Population(std::move(weights), std::move(values));
}

PopulationStats population_stats(const Population& pop) {
  const auto w = pop.weights();
  const auto v = pop.values();
  const auto [vmin, vmax] = std::minmax_element(v.begin(), v.end());
  const auto [wmin, wmax] = std::minmax_element(w.begin(), w.end());
  PopulationStats stats;
  stats.delta = *vmax - *vmin;
  stats.alpha = *wmin / *wmax;
  stats.mean_value = std::inner_product(w.begin(), w.end(), v.begin(), 0.0);
  return stats;
}

double cumulative_value(const Population& pop, std::span<const ItemId> sample) {
  double total = 0.0;
  for (ItemId id : sample) {
    if (!pop.contains(id)) throw InvalidInput("unknown item id " + std::to_string(id));
    total += pop.value(id);
  }
  return total;
}

bool values_follow_weights(const Population& pop) {
  const auto w = pop.weights();
  const auto v = pop.values();
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Sort by weight; within a block of equal weights no constraint applies, so
  // it suffices that every value in a block is >= the max of all lighter blocks.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  double lighter_max = -INFINITY;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    double block_max = -INFINITY;
    while (j < order.size() && w[order[j]] == w[order[i]]) {
      if (v[order[j]] < lighter_max) return false;
      block_max = std::max(block_max, v[order[j]]);
      ++j;
    }
    lighter_max = std::max(lighter_max, block_max);
    i = j;
  }
  return true;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no, const char* what) {
  field = trim(field);
  T out{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  if (ec != std::errc{} || ptr != end || field.empty())
    throw InvalidInput("line " + std::to_string(line_no) + ": cannot parse " + what + " '" +
                       std::string(field) + "'");
  return out;
}

}  // namespace

Population parse_population_csv(std::string_view text) {
  std::vector<Item> items;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line_no == 1 && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF)
        line = trim(line.substr(3));  // UTF-8 BOM
      std::string header;
      for (char c : line)
        if (c != ' ' && c != '\t') header.push_back(c);
      if (header != "id,weight,value")
        throw InvalidInput("population CSV header must be 'id,weight,value'");
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos)
      throw InvalidInput("line " + std::to_string(line_no) + ": expected 3 fields");
    Item item{};
    item.id = parse_number<int>(line.substr(0, c1), line_no, "id");
    item.weight = parse_number<double>(line.substr(c1 + 1, c2 - c1 - 1), line_no, "weight");
    item.value = parse_number<double>(line.substr(c2 + 1), line_no, "value");
    items.push_back(item);
  }
  if (!header_seen) throw InvalidInput("population is empty");
  return Population::from_items(items);
}

Population parse_population_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("population JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InvalidInput("population JSON must be an array");
  std::vector<Item> items;
  items.reserve(doc.size());
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("id") || !entry.contains("weight") ||
        !entry.contains("value"))
      throw InvalidInput("population JSON entries need id, weight and value");
    if (!entry["id"].is_number_integer() || !entry["weight"].is_number() ||
        !entry["value"].is_number())
      throw InvalidInput("population JSON entry has a non-numeric field");
    items.push_back({entry["id"].get<int>(), entry["weight"].get<double>(),
                     entry["value"].get<double>()});
  }
  return Population::from_items(items);
}

Population load_population(std::string_view source) {
  const auto body = trim(source);
  if (!body.empty() && body.front() == '[') return parse_population_json(body);
  return parse_population_csv(source);
}

Population load_population_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open population file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_population(buffer.str());
}

}  // namespace drawcouple
