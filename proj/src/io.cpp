#include "lrgf/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lrgf::io {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Json model_to_json(const SpectralModel& model) {
    Json j;
    j["dimension"] = model.dimension();
    j["kind"] = to_string(model.kind());
    switch (model.kind()) {
        case ModelKind::WhiteNoise:
            break;
        case ModelKind::Isotropic:
        case ModelKind::Product:
            j["alpha"] = model.alpha();
            break;
        case ModelKind::TwoLines:
            j["alpha_p"] = model.alpha_p();
            j["alpha_q"] = model.alpha_q();
            j["p"] = model.slope_p();
            j["q"] = model.slope_q();
            break;
        case ModelKind::OneDirection:
            j["alpha"] = model.alpha();
            j["p"] = model.slope_p();
            break;
    }
    if (model.kind() != ModelKind::WhiteNoise) {
        if (!model.has_constant_l1())
            throw ConfigError("only constant L1 factors serialize");
        const double value = model.kind() == ModelKind::OneDirection
                                 ? model.ftilde_scale()
                                 : model.l1().at_zero;
        j["l1"] = Json{{"type", "const"}, {"value", value}};
    }
    return j;
}

SpectralModel model_from_json(const Json& j) {
    try {
        const int d = j.at("dimension").get<int>();
        const ModelKind kind =
            model_kind_from_string(j.at("kind").get<std::string>());
        double l1 = 1.0;
        if (j.contains("l1")) {
            if (j["l1"].at("type").get<std::string>() != "const")
                throw ConfigError("only constant L1 factors deserialize");
            l1 = j["l1"].at("value").get<double>();
        }
        switch (kind) {
            case ModelKind::WhiteNoise:
                return SpectralModel::white_noise(d);
            case ModelKind::Isotropic:
                return SpectralModel::isotropic(
                    d, j.at("alpha").get<double>(),
                    BoundedFactor::constant(l1));
            case ModelKind::Product:
                return SpectralModel::product(d, j.at("alpha").get<double>(),
                                              BoundedFactor::constant(l1));
            case ModelKind::TwoLines:
                if (d != 2) throw ConfigError("two-line models need d = 2");
                return SpectralModel::two_lines(
                    j.at("alpha_p").get<double>(),
                    j.at("alpha_q").get<double>(), j.at("p").get<double>(),
                    j.at("q").get<double>(), BoundedFactor::constant(l1));
            case ModelKind::OneDirection:
                if (d != 2)
                    throw ConfigError("one-direction models need d = 2");
                return SpectralModel::one_direction(
                    j.at("alpha").get<double>(), j.at("p").get<double>(), l1);
        }
        throw ConfigError("unknown model kind");
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("bad model JSON: ") + e.what());
    }
}

Json spec_to_json(const QuadraticFormSpec& spec) {
    Json j;
    j["dimension"] = spec.dimension();
    Json support = Json::array();
    for (const auto& w : spec.weights()) {
        Json lag;
        if (spec.dimension() == 1)
            lag = w.lag[0];
        else
            lag = Json::array({w.lag[0], w.lag[1]});
        support.push_back(Json::array({lag, w.value}));
    }
    j["support"] = support;
    j["beta"] = spec.beta();
    j["l2_zero"] = spec.l2_zero();
    return j;
}

QuadraticFormSpec spec_from_json(const Json& j) {
    try {
        const int d = j.at("dimension").get<int>();
        std::vector<QuadraticFormSpec::Weight> weights;
        for (const auto& entry : j.at("support")) {
            QuadraticFormSpec::Weight w{{0, 0}, entry.at(1).get<double>()};
            const auto& lag = entry.at(0);
            if (lag.is_array()) {
                w.lag[0] = lag.at(0).get<long>();
                if (d == 2) w.lag[1] = lag.at(1).get<long>();
            } else {
                w.lag[0] = lag.get<long>();
            }
            weights.push_back(w);
        }
        QuadraticFormSpec spec(d, std::move(weights));
        if (j.contains("beta") || j.contains("l2_zero")) {
            const double beta = j.value("beta", 0.0);
            const double l2 = j.value("l2_zero", spec.l2_zero());
            spec.with_symbol_metadata(beta, l2);
        }
        return spec;
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("bad form JSON: ") + e.what());
    }
}

std::string covariance_table_csv(const CovarianceTable& table) {
    std::ostringstream os;
    if (table.dimension == 1) {
        os << "h1,r\n";
        for (long h = -table.radius; h <= table.radius; ++h)
            os << h << "," << format_double(table.at(h)) << "\n";
    } else {
        os << "h1,h2,r\n";
        for (long h1 = -table.radius; h1 <= table.radius; ++h1)
            for (long h2 = -table.radius; h2 <= table.radius; ++h2)
                os << h1 << "," << h2 << ","
                   << format_double(table.at(h1, h2)) << "\n";
    }
    return os.str();
}

std::string field_csv(const FieldSample& field) {
    std::ostringstream os;
    const long lo = 1 - field.margin();
    const long hi = field.n() + field.margin();
    if (field.dimension() == 1) {
        os << "i1,value\n";
        for (long i = lo; i <= hi; ++i)
            os << i << "," << format_double(field.at(i)) << "\n";
    } else {
        os << "i1,i2,value\n";
        for (long i1 = lo; i1 <= hi; ++i1)
            for (long i2 = lo; i2 <= hi; ++i2)
                os << i1 << "," << i2 << ","
                   << format_double(field.at(i1, i2)) << "\n";
    }
    return os.str();
}

Json field_sidecar(const FieldSample& field) {
    const FieldMeta& m = field.meta();
    Json j;
    j["model"] = m.model;
    j["n"] = m.n;
    j["margin"] = m.margin;
    j["kappa"] = m.kappa;
    j["seed"] = m.seed;
    j["stream"] = m.stream;
    j["method"] = m.method;
    return j;
}

FieldMeta field_meta_from_json(const Json& j) {
    try {
        FieldMeta m;
        m.model = j.at("model").get<std::string>();
        m.n = j.at("n").get<long>();
        m.margin = j.at("margin").get<long>();
        m.kappa = j.at("kappa").get<int>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.stream = j.at("stream").get<std::uint64_t>();
        m.method = j.at("method").get<std::string>();
        return m;
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("bad field sidecar: ") + e.what());
    }
}

std::string samples_csv(std::span<const double> samples) {
    std::ostringstream os;
    os << "index,value\n";
    for (std::size_t i = 0; i < samples.size(); ++i)
        os << i << "," << format_double(samples[i]) << "\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return std::string(buf);
}

}  // namespace lrgf::io
