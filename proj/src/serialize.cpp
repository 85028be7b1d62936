#include "trustcf/serialize.hpp"

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "trustcf/version.hpp"

namespace trustcf {

namespace {

using nlohmann::json;

double round_cents(double v) { return std::round(v * 100.0) / 100.0; }

std::string format_money(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string format_exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Percentile column label: p2.5, p50, p97.5 (no trailing zeros).
std::string percentile_label(double p) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", p);
    return std::string("p") + buf;
}

json require(const json& j, const char* key, const char* what) {
    if (!j.contains(key))
        throw std::runtime_error(std::string(what) + ": missing key '" + key + "'");
    return j.at(key);
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string hazard_to_json(const HazardModel& model) {
    const SupportWindow& w = model.window;
    json j;
    j["delta"] = w.delta;
    j["m"] = w.m;
    j["omega"] = w.omega;
    j["epsilon"] = w.epsilon;
    j["tau"] = w.tau;
    j["xi"] = w.xi;
    j["n"] = model.n;
    std::vector<int> support;
    for (int x = w.delta + 1; x <= w.xi; ++x) support.push_back(x);
    j["support"] = support;
    j["lambda"] = model.lambda;
    j["f_hat"] = model.f_hat;
    j["c_hat"] = model.c_hat;
    return j.dump(2) + "\n";
}

HazardModel hazard_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("hazard model: invalid JSON: ") + e.what());
    }
    const char* what = "hazard model";
    int delta = require(j, "delta", what).get<int>();
    int m = require(j, "m", what).get<int>();
    int omega = require(j, "omega", what).get<int>();
    int epsilon = require(j, "epsilon", what).get<int>();
    int tau = require(j, "tau", what).get<int>();
    int xi = require(j, "xi", what).get<int>();
    long n = require(j, "n", what).get<long>();

    SupportWindow w = make_support_window(delta, m, omega, epsilon);
    if (tau != w.tau)
        throw std::runtime_error("hazard model: tau " + std::to_string(tau) +
                                 " inconsistent with the window (expected " +
                                 std::to_string(w.tau) + ")");
    // xi may exceed the estimation bound when the tail has been extended, but
    // never omega and never less than the window's own bound.
    if (xi < w.xi || xi > w.omega)
        throw std::runtime_error("hazard model: xi " + std::to_string(xi) +
                                 " outside [" + std::to_string(w.xi) + ", " +
                                 std::to_string(w.omega) + "]");
    w.xi = xi;
    if (n < 0) throw std::runtime_error("hazard model: negative n");

    std::vector<int> support = require(j, "support", what).get<std::vector<int>>();
    if (support.size() != static_cast<std::size_t>(w.support_size()))
        throw std::runtime_error("hazard model: support length does not match xi");
    for (std::size_t i = 0; i < support.size(); ++i)
        if (support[i] != delta + 1 + static_cast<int>(i))
            throw std::runtime_error("hazard model: support must be consecutive ages from " +
                                     std::to_string(delta + 1));

    HazardModel model;
    model.window = w;
    model.n = n;
    model.lambda = require(j, "lambda", what).get<std::vector<double>>();
    model.f_hat = require(j, "f_hat", what).get<std::vector<double>>();
    model.c_hat = require(j, "c_hat", what).get<std::vector<double>>();
    if (model.lambda.size() != support.size() || model.f_hat.size() != support.size() ||
        model.c_hat.size() != support.size())
        throw std::runtime_error("hazard model: array lengths do not match the support");
    for (double v : model.lambda)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::runtime_error("hazard model: lambda outside [0, 1]");
    for (double v : model.c_hat)
        if (v < 0.0) throw std::runtime_error("hazard model: negative c_hat");
    for (double v : model.f_hat)
        if (v < 0.0) throw std::runtime_error("hazard model: negative f_hat");
    return model;
}

void save_hazard(const HazardModel& model, const std::string& path) {
    write_file(path, hazard_to_json(model));
}

HazardModel load_hazard(const std::string& path) {
    try {
        return hazard_from_json(read_file(path));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string price_report_to_json(const PriceReport& report) {
    json j;
    j["apv_trust"] = round_cents(report.apv_trust);
    j["sd_trust"] = round_cents(report.sd_trust);
    j["var_trust"] = round_cents(report.var_trust);
    j["rate"] = report.rate;
    if (report.has_cte) {
        j["cte"] = round_cents(report.cte);
        j["alpha"] = report.alpha;
        j["tail"] = report.tail == TailDirection::upper ? "upper" : "lower";
    } else {
        j["cte"] = nullptr;
        j["alpha"] = nullptr;
        j["tail"] = nullptr;
    }
    json contracts = json::array();
    for (const ContractPrice& c : report.contracts) {
        json jc;
        jc["id"] = c.id;
        jc["apv"] = round_cents(c.apv);
        jc["sd"] = round_cents(c.sd);
        contracts.push_back(jc);
    }
    j["contracts"] = contracts;
    return j.dump(2) + "\n";
}

void save_price_report(const PriceReport& report, const std::string& path) {
    write_file(path, price_report_to_json(report));
}

std::string empirics_to_json(const ApvEmpirics& empirics) {
    json j;
    j["mean"] = round_cents(empirics.mean);
    j["median"] = round_cents(empirics.median);
    j["sd"] = round_cents(empirics.sd);
    j["cte"] = round_cents(empirics.cte);
    j["alpha"] = empirics.alpha;
    j["replicates"] = empirics.replicates;
    j["seed"] = empirics.seed;
    return j.dump(2) + "\n";
}

void save_empirics(const ApvEmpirics& empirics, const std::string& path) {
    write_file(path, empirics_to_json(empirics));
}

std::string bands_to_csv(const BandMatrix& bands) {
    std::ostringstream out;
    out << "month,mean";
    for (double p : bands.percentiles) out << "," << percentile_label(p);
    out << "\n";
    for (int t = 0; t < bands.horizon; ++t) {
        out << (t + 1) << "," << format_money(bands.mean_row[static_cast<std::size_t>(t)]);
        for (std::size_t p = 0; p < bands.percentiles.size(); ++p)
            out << "," << format_money(bands.rows[p][static_cast<std::size_t>(t)]);
        out << "\n";
    }
    return out.str();
}

void save_bands(const BandMatrix& bands, const std::string& path) {
    write_file(path, bands_to_csv(bands));
}

std::string curve_to_csv(const DepreciationCurve& curve) {
    std::ostringstream out;
    out << "age,z\n";
    for (const auto& [age, z] : curve.values) out << age << "," << format_exact(z) << "\n";
    return out.str();
}

DepreciationCurve curve_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "age,z")
        throw std::runtime_error("curve: bad header, expected 'age,z'");
    DepreciationCurve curve;
    long row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("curve: row " + std::to_string(row) + ": expected 2 fields");
        int age = 0;
        double z = 0.0;
        try {
            age = std::stoi(line.substr(0, comma));
            z = std::stod(line.substr(comma + 1));
        } catch (...) {
            throw std::runtime_error("curve: row " + std::to_string(row) + ": bad value");
        }
        if (z < 0.0)
            throw std::runtime_error("curve: row " + std::to_string(row) + ": negative ratio");
        if (curve.values.count(age))
            throw std::runtime_error("curve: row " + std::to_string(row) + ": duplicate age " +
                                     std::to_string(age));
        curve.values[age] = z;
    }
    if (curve.values.empty()) throw std::runtime_error("curve: no rows");
    return curve;
}

void save_curve(const DepreciationCurve& curve, const std::string& path) {
    write_file(path, curve_to_csv(curve));
}

DepreciationCurve load_curve(const std::string& path) {
    try {
        return curve_from_csv(read_file(path));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string portfolio_to_csv(const std::vector<LeaseRecord>& records) {
    std::ostringstream out;
    out << "id,origination_month,scheduled_term,monthly_payment,vehicle_value,"
           "termination_month,residual_paid\n";
    for (const LeaseRecord& r : records) {
        out << r.id << "," << r.origination_month << "," << r.scheduled_term << ","
            << format_exact(r.monthly_payment) << "," << format_exact(r.vehicle_value) << ",";
        if (r.termination_month) out << *r.termination_month;
        out << ",";
        if (r.residual_paid) out << format_exact(*r.residual_paid);
        out << "\n";
    }
    return out.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) { return fnv1a(read_file(path)); }

std::string manifest_to_json(const RunManifest& manifest) {
    json j;
    j["command"] = manifest.command;
    j["version"] = manifest.version.empty() ? kVersion : manifest.version;
    if (manifest.has_seed)
        j["seed"] = manifest.seed;
    else
        j["seed"] = nullptr;
    json params = json::object();
    for (const auto& [k, v] : manifest.parameters) params[k] = v;
    j["parameters"] = params;
    json inputs = json::array();
    for (const auto& [path, hash] : manifest.inputs) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
        json ji;
        ji["path"] = path;
        ji["fnv1a64"] = buf;
        inputs.push_back(ji);
    }
    j["inputs"] = inputs;
    return j.dump(2) + "\n";
}

void save_manifest(const RunManifest& manifest, const std::string& output_path) {
    write_file(output_path + ".manifest.json", manifest_to_json(manifest));
}

}  // namespace trustcf
