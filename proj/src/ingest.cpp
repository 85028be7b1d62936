#include "trustcf/ingest.hpp"

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace trustcf {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_int(const std::string& s, int& out) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) return false;
        out = v;
        return true;
    } catch (...) {
        return false;
    }
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) return false;
        out = v;
        return true;
    } catch (...) {
        return false;
    }
}

}  // namespace

std::vector<LeaseRecord> parse_portfolio(std::istream& in) {
    static const char* kHeader =
        "id,origination_month,scheduled_term,monthly_payment,vehicle_value,"
        "termination_month,residual_paid";

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("portfolio: empty input");
    if (trim(line) != kHeader)
        throw std::runtime_error(std::string("portfolio: bad header, expected '") + kHeader +
                                 "'");

    std::vector<LeaseRecord> records;
    std::vector<std::string> errors;
    std::set<std::string> seen_ids;
    long row = 1;

    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        std::vector<std::string> f = split_csv_line(line);
        auto fail = [&](const std::string& what) {
            errors.push_back("row " + std::to_string(row) + ": " + what);
        };
        if (f.size() != 7) {
            fail("expected 7 fields, got " + std::to_string(f.size()));
            continue;
        }
        LeaseRecord r;
        r.id = trim(f[0]);
        if (r.id.empty()) {
            fail("empty id");
            continue;
        }
        if (!seen_ids.insert(r.id).second) fail("duplicate id '" + r.id + "'");
        bool ok = true;
        if (!parse_int(trim(f[1]), r.origination_month)) {
            fail("bad origination_month '" + trim(f[1]) + "'");
            ok = false;
        }
        if (!parse_int(trim(f[2]), r.scheduled_term)) {
            fail("bad scheduled_term '" + trim(f[2]) + "'");
            ok = false;
        }
        if (!parse_double(trim(f[3]), r.monthly_payment) || r.monthly_payment < 0.0) {
            fail("bad monthly_payment '" + trim(f[3]) + "'");
            ok = false;
        }
        if (!parse_double(trim(f[4]), r.vehicle_value) || r.vehicle_value <= 0.0) {
            fail("bad vehicle_value '" + trim(f[4]) + "'");
            ok = false;
        }
        std::string term = trim(f[5]);
        if (!term.empty()) {
            int v = 0;
            if (!parse_int(term, v)) {
                fail("bad termination_month '" + term + "'");
                ok = false;
            } else {
                r.termination_month = v;
            }
        }
        std::string residual = trim(f[6]);
        if (!residual.empty()) {
            double v = 0.0;
            if (!parse_double(residual, v) || v < 0.0) {
                fail("bad residual_paid '" + residual + "'");
                ok = false;
            } else {
                r.residual_paid = v;
            }
        }
        if (ok) records.push_back(std::move(r));
    }

    if (!errors.empty()) {
        std::string msg = "portfolio: " + std::to_string(errors.size()) + " bad row(s):";
        for (const std::string& e : errors) msg += "\n  " + e;
        throw std::runtime_error(msg);
    }
    return records;
}

std::vector<LeaseRecord> parse_portfolio_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("portfolio: cannot open '" + path + "'");
    try {
        return parse_portfolio(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

DerivedObservations derive_observations(const std::vector<LeaseRecord>& records,
                                        const SupportWindow& w, int term_months) {
    DerivedObservations out;
    out.active.window = w;

    for (const LeaseRecord& r : records) {
        auto exclude = [&](const std::string& reason) {
            out.excluded.push_back({r.id, reason});
        };
        if (r.scheduled_term != term_months) {
            exclude("scheduled term " + std::to_string(r.scheduled_term) +
                    " != modeled term " + std::to_string(term_months));
            continue;
        }
        const int T = r.origination_month;
        if (T < 1 || T > w.m) {
            exclude("origination month " + std::to_string(T) + " outside 1.." +
                    std::to_string(w.m));
            continue;
        }
        const int y = w.m + w.delta + 1 - T;

        const bool terminated = r.termination_month.has_value() && *r.termination_month <= w.epsilon;
        if (terminated) {
            int x = *r.termination_month - T;
            if (x > w.omega) x = w.omega;  // residual settled late; the lifetime ended at omega
            if (x < y) {
                exclude("terminated at age " + std::to_string(x) +
                        " before entering observation at age " + std::to_string(y));
                continue;
            }
            out.triples.push_back({y, x, true});
            ++out.n_events;
        } else {
            const int age = w.epsilon - T;
            if (age >= w.omega) {
                exclude("open at age " + std::to_string(age) +
                        ", beyond the maximum lifetime " + std::to_string(w.omega));
                continue;
            }
            out.triples.push_back({y, y + w.tau, false});
            ++out.n_censored;
            LeaseContract c;
            c.id = r.id;
            c.monthly_payment = r.monthly_payment;
            c.vehicle_value = r.vehicle_value;
            c.age = age;
            out.active.contracts.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<RawDepreciationPoint> estimate_depreciation(const std::vector<LeaseRecord>& records) {
    std::map<int, std::pair<double, long>> sums;  // sale age -> (ratio sum, count)
    for (const LeaseRecord& r : records) {
        if (!r.termination_month || !r.residual_paid || r.vehicle_value <= 0.0) continue;
        int sale_age = *r.termination_month - r.origination_month - 1;
        if (sale_age < 0) continue;  // terminated in its first month; no sale month exists
        auto& slot = sums[sale_age];
        slot.first += *r.residual_paid / r.vehicle_value;
        slot.second += 1;
    }
    std::vector<RawDepreciationPoint> points;
    points.reserve(sums.size());
    for (const auto& [age, sum_count] : sums) {
        RawDepreciationPoint p;
        p.age = age;
        p.count = sum_count.second;
        p.ratio = sum_count.first / static_cast<double>(sum_count.second);
        p.flagged = p.ratio < 0.0 || p.ratio > 1.2;
        points.push_back(p);
    }
    return points;
}

}  // namespace trustcf
