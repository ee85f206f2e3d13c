#include "market_clock/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "market_clock/linalg.hpp"

namespace mclock {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
    return out;
}

Vector read_vector(const json& j, const std::string& name) {
    if (!j.is_array()) throw SpecError({name + ": expected an array of numbers"});
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw SpecError({name + ": expected an array of numbers"});
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

Matrix read_matrix(const json& j, const std::string& name) {
    if (!j.is_array() || j.empty()) throw SpecError({name + ": expected a nonempty array of rows"});
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r) {
        const Vector row = read_vector(j[r], name + "[" + std::to_string(r) + "]");
        if (static_cast<std::size_t>(row.size()) != cols) throw SpecError({name + ": ragged rows (dimension mismatch)"});
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return m;
}

double read_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw SpecError({where + ": missing \"" + key + "\""});
    if (!j.at(key).is_number()) throw SpecError({where + ": \"" + key + "\" must be a number"});
    return j.at(key).get<double>();
}

CoefficientModel read_model(const json& ito) {
    if (!ito.is_object()) throw SpecError({"ito: expected an object"});
    const std::string model = ito.value("model", std::string("constant"));
    if (model == "constant") return ConstantModel{};
    if (model == "schedule") {
        ScheduleModel s;
        if (!ito.contains("times") || !ito.contains("a") || !ito.contains("sigma"))
            throw SpecError({"ito.schedule: requires \"times\", \"a\" and \"sigma\""});
        const Vector times = read_vector(ito.at("times"), "ito.times");
        s.times.assign(times.data(), times.data() + times.size());
        if (!ito.at("a").is_array() || !ito.at("sigma").is_array())
            throw SpecError({"ito.schedule: \"a\" and \"sigma\" must be arrays"});
        for (std::size_t i = 0; i < ito.at("a").size(); ++i)
            s.a.push_back(read_vector(ito.at("a")[i], "ito.a[" + std::to_string(i) + "]"));
        for (std::size_t i = 0; i < ito.at("sigma").size(); ++i)
            s.sigma.push_back(read_matrix(ito.at("sigma")[i], "ito.sigma[" + std::to_string(i) + "]"));
        return s;
    }
    if (model == "stochastic_vol") {
        StochasticVolModel sv;
        sv.kappa = read_number(ito, "kappa", "ito.stochastic_vol");
        sv.xi = read_number(ito, "xi", "ito.stochastic_vol");
        sv.y0 = ito.contains("y0") ? read_number(ito, "y0", "ito.stochastic_vol") : 0.0;
        return sv;
    }
    throw SpecError({"ito: unknown model \"" + model + "\""});
}

}  // namespace

SpecError::SpecError(std::vector<std::string> errs) : std::runtime_error(join(errs)), errors(std::move(errs)) {}

MarketSpec parse_market_spec(const json& doc) {
    try {
        if (!doc.is_object()) throw SpecError({"market spec must be a JSON object"});
        if (!doc.contains("a")) throw SpecError({"missing \"a\""});
        const Vector a = read_vector(doc.at("a"), "a");
        const int d = doc.contains("d") ? doc.at("d").get<int>() : static_cast<int>(a.size());
        std::optional<Matrix> sigma;
        if (doc.contains("sigma")) sigma = read_matrix(doc.at("sigma"), "sigma");
        const int m = doc.contains("m") ? doc.at("m").get<int>() : (sigma ? static_cast<int>(sigma->cols()) : d);
        Matrix c;
        if (doc.contains("c")) c = read_matrix(doc.at("c"), "c");

        if (doc.contains("ito")) {
            ItoMarketSpec spec;
            spec.d = d;
            spec.m = m;
            spec.a = a;
            if (sigma) {
                spec.sigma = *sigma;
            } else if (c.size() > 0) {
                spec.sigma = linalg::psd_sqrt(c);
                spec.m = static_cast<int>(spec.sigma.cols());
            } else {
                throw SpecError({"ito market requires \"sigma\" or \"c\""});
            }
            if (doc.contains("atoms") && !doc.at("atoms").empty())
                throw SpecError({"ito market cannot carry jump atoms"});
            spec.model = read_model(doc.at("ito"));
            auto v = validate_spec(spec);
            if (!v.ok()) throw SpecError(v.errors);
            return *v.spec;
        }

        LevyMarketSpec spec;
        spec.d = d;
        spec.m = m;
        spec.a = a;
        spec.sigma = sigma;
        spec.c = c;
        if (doc.contains("atoms")) {
            const json& atoms = doc.at("atoms");
            if (!atoms.is_array()) throw SpecError({"atoms: expected an array"});
            for (std::size_t k = 0; k < atoms.size(); ++k) {
                const std::string where = "atoms[" + std::to_string(k) + "]";
                if (!atoms[k].is_object() || !atoms[k].contains("z"))
                    throw SpecError({where + ": expected {\"z\": [...], \"rate\": r}"});
                spec.atoms.push_back({read_vector(atoms[k].at("z"), where + ".z"), read_number(atoms[k], "rate", where)});
            }
        }
        auto v = validate_spec(spec);
        if (!v.ok()) throw SpecError(v.errors);
        return *v.spec;
    } catch (const json::exception& ex) {
        throw SpecError({std::string("malformed market spec: ") + ex.what()});
    }
}

MarketSpec parse_market_spec_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw SpecError({std::string("JSON parse error: ") + ex.what()});
    }
    return parse_market_spec(doc);
}

MarketSpec load_market_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SpecError({"cannot read spec file " + path.string()});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_market_spec_text(buf.str());
}

}  // namespace mclock
