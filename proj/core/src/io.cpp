#include "g3m/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace g3m {

namespace {

using nlohmann::json;

std::vector<double> number_list(const json& doc, const char* key) {
    if (!doc.contains(key))
        throw std::invalid_argument(std::string("pool config: missing '") + key + "'");
    const json& arr = doc.at(key);
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument(std::string("pool config: '") + key +
                                    "' must be a nonempty array of numbers");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const json& v : arr) {
        if (!v.is_number())
            throw std::invalid_argument(std::string("pool config: '") + key +
                                        "' must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

double number_field(const json& doc, const char* key, const char* context) {
    if (!doc.contains(key) || !doc.at(key).is_number())
        throw std::invalid_argument(std::string("pool config: ") + context + " needs a numeric '" +
                                    key + "'");
    return doc.at(key).get<double>();
}

MeanSpec parse_mean(const json& doc) {
    if (!doc.contains("mean") || !doc.at("mean").is_object())
        throw std::invalid_argument("pool config: missing 'mean' object");
    const json& mean = doc.at("mean");
    const std::string type = mean.value("type", "");
    if (type == "power") return PowerMean{number_field(mean, "p", "power mean")};
    if (type == "geometric") return GeometricMean{};
    if (type == "fmean") {
        const std::string f = mean.value("f", "");
        if (f == "log") return FMean{LogF{}};
        if (f == "power") return FMean{PowerF{number_field(mean, "fp", "fmean power generator")}};
        throw std::invalid_argument("pool config: mean.f must be 'power' or 'log'");
    }
    throw std::invalid_argument("pool config: mean.type must be 'power', 'geometric' or 'fmean'");
}

}  // namespace

Pool parse_pool_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("pool config: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("pool config: document must be an object");
    auto reserves = number_list(doc, "reserves");
    Weights weights(number_list(doc, "weights"));
    return Pool(std::move(reserves), std::move(weights), parse_mean(doc));
}

Pool load_pool_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("pool config: cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_pool_config(buffer.str());
}

std::string serialize_pool_config(const Pool& pool) {
    json doc;
    doc["reserves"] = std::vector<double>(pool.reserves().begin(), pool.reserves().end());
    doc["weights"] =
        std::vector<double>(pool.weights().values().begin(), pool.weights().values().end());
    doc["mean"] = std::visit(
        detail::overloaded{
            [](const PowerMean& m) { return json{{"type", "power"}, {"p", m.p}}; },
            [](const GeometricMean&) { return json{{"type", "geometric"}}; },
            [](const FMean& m) {
                if (const auto* pf = std::get_if<PowerF>(&m.f))
                    return json{{"type", "fmean"}, {"f", "power"}, {"fp", pf->p}};
                return json{{"type", "fmean"}, {"f", "log"}};
            },
        },
        pool.spec());
    return doc.dump(2) + "\n";
}

}  // namespace g3m
