#include "orbicover/catalog_io.hpp"

#include "orbicover/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace orbicover {

namespace {

using json = nlohmann::json;

std::string line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object())
        throw ValidationError(where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw ValidationError(where + " is missing \"" + key + "\"");
    return *it;
}

Rational rational_field(const json& v, const std::string& where)
{
    if (v.is_number_integer())
        return Rational(v.get<long>());
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    throw ValidationError(where + " must be an integer or a \"p/q\" string");
}

long int_field(const json& v, const std::string& where)
{
    if (!v.is_number_integer())
        throw ValidationError(where + " must be an integer");
    return v.get<long>();
}

std::string string_field(const json& v, const std::string& where)
{
    if (!v.is_string())
        throw ValidationError(where + " must be a string");
    return v.get<std::string>();
}

const json& array_field(const json& v, const std::string& where)
{
    if (!v.is_array())
        throw ValidationError(where + " must be an array");
    return v;
}

CzModel model_from(const json& m, const std::string& where)
{
    const auto type = string_field(field(m, "type", where), where + ".type");
    if (type == "hyperbolic")
        return HyperbolicModel{};
    if (type == "elliptic") {
        EllipticModel e{rational_field(field(m, "rotation", where), where + ".rotation"), false};
        if (auto it = m.find("irrational_approximant"); it != m.end()) {
            if (!it->is_boolean())
                throw ValidationError(where + ".irrational_approximant must be a boolean");
            e.irrational_approximant = it->get<bool>();
        }
        return e;
    }
    if (type == "table") {
        TableModel t;
        for (const auto& v : array_field(field(m, "values", where), where + ".values"))
            t.values.push_back(static_cast<int>(int_field(v, where + ".values[]")));
        return t;
    }
    throw ValidationError(where + ".type must be hyperbolic, elliptic or table, got \"" + type + "\"");
}

}  // namespace

OrbitCatalog parse_catalog(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw ValidationError("catalog parse error at " + line_column(text, byte) + ": " + e.what());
    }
    const std::string root = "catalog";
    const int dim_v = static_cast<int>(int_field(field(doc, "dim_v", root), "dim_v"));
    const int h2_rank = static_cast<int>(int_field(field(doc, "h2_rank", root), "h2_rank"));
    std::vector<Rational> omega;
    for (const auto& v : array_field(field(doc, "omega_pairing", root), "omega_pairing"))
        omega.push_back(rational_field(v, "omega_pairing[]"));

    std::vector<SimpleOrbit> orbits;
    std::size_t i = 0;
    for (const auto& o : array_field(field(doc, "orbits", root), "orbits")) {
        std::string where = "orbits[" + std::to_string(i++) + "]";
        SimpleOrbit s;
        s.name = string_field(field(o, "name", where), where + ".name");
        where = "orbit " + s.name;
        s.cz_index = static_cast<int>(int_field(field(o, "cz_index", where), where + ".cz_index"));
        s.period = rational_field(field(o, "period", where), where + ".period");
        s.action = rational_field(field(o, "action", where), where + ".action");
        for (const auto& v : array_field(field(o, "h1_class", where), where + ".h1_class"))
            s.h1_class.push_back(int_field(v, where + ".h1_class[]"));
        s.cz_model = model_from(field(o, "cz_model", where), where + ".cz_model");
        orbits.push_back(std::move(s));
    }

    std::vector<ClosedForm> forms;
    i = 0;
    for (const auto& f : array_field(field(doc, "forms", root), "forms")) {
        std::string where = "forms[" + std::to_string(i++) + "]";
        ClosedForm c;
        c.name = string_field(field(f, "name", where), where + ".name");
        where = "form " + c.name;
        c.degree = static_cast<int>(int_field(field(f, "degree", where), where + ".degree"));
        const auto& integrals = field(f, "integrals", where);
        if (!integrals.is_object())
            throw ValidationError(where + ".integrals must be an object");
        for (const auto& [orbit, value] : integrals.items())
            c.integrals.emplace(orbit, rational_field(value, where + ".integrals." + orbit));
        forms.push_back(std::move(c));
    }
    return OrbitCatalog(dim_v, std::move(orbits), std::move(forms), h2_rank, std::move(omega));
}

OrbitCatalog load_catalog(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open catalog " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str());
}

std::string serialize_catalog(const OrbitCatalog& catalog, int indent)
{
    json doc;
    doc["dim_v"] = catalog.dim_v();
    doc["h2_rank"] = catalog.h2_rank();
    doc["omega_pairing"] = json::array();
    for (const auto& w : catalog.omega_pairing())
        doc["omega_pairing"].push_back(to_string(w));
    doc["orbits"] = json::array();
    for (const auto& o : catalog.orbits()) {
        json model;
        if (std::holds_alternative<HyperbolicModel>(o.cz_model))
            model = {{"type", "hyperbolic"}};
        else if (const auto* e = std::get_if<EllipticModel>(&o.cz_model)) {
            model = {{"type", "elliptic"}, {"rotation", to_string(e->rotation)}};
            if (e->irrational_approximant)
                model["irrational_approximant"] = true;
        } else
            model = {{"type", "table"}, {"values", std::get<TableModel>(o.cz_model).values}};
        doc["orbits"].push_back({{"name", o.name},
                                 {"cz_index", o.cz_index},
                                 {"period", to_string(o.period)},
                                 {"action", to_string(o.action)},
                                 {"h1_class", o.h1_class},
                                 {"cz_model", model}});
    }
    doc["forms"] = json::array();
    for (const auto& f : catalog.forms()) {
        json integrals = json::object();
        for (const auto& [name, v] : f.integrals)
            integrals[name] = to_string(v);
        doc["forms"].push_back({{"name", f.name}, {"degree", f.degree}, {"integrals", integrals}});
    }
    return doc.dump(indent);
}

}  // namespace orbicover
