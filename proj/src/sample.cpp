#include "elci/sample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "elci/errors.hpp"

namespace elci {

CensoredSample::CensoredSample(std::vector<CensoredObservation> observations)
    : obs_(std::move(observations)) {
    for (const auto& o : obs_) {
        if (!std::isfinite(o.time) || o.time < 0.0) {
            throw ValidationError("observation time must be finite and nonnegative");
        }
        if (o.event != 0 && o.event != 1) {
            throw ValidationError("event flag must be 0 or 1");
        }
    }
    std::sort(obs_.begin(), obs_.end(), [](const auto& a, const auto& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.event > b.event;  // events precede censorings at a tie
    });
    for (std::size_t i = 0; i < obs_.size(); ++i) {
        events_ += static_cast<std::size_t>(obs_[i].event);
        if (i > 0 && obs_[i].time == obs_[i - 1].time) tied_ = true;
    }
    if (obs_.size() < 2) throw DegenerateSample("need at least 2 observations");
    if (events_ == 0) throw DegenerateSample("need at least one event");
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(field);
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

CensoredSample ingest_csv(const std::string& path, const CsvConfig& config) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty file: " + path);
    auto header = split_line(line, config.delimiter);
    std::ptrdiff_t time_idx = -1, event_idx = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        auto name = strip(header[i]);
        if (name == config.time_column) time_idx = static_cast<std::ptrdiff_t>(i);
        if (name == config.event_column) event_idx = static_cast<std::ptrdiff_t>(i);
    }
    if (time_idx < 0) throw ValidationError("missing column: " + config.time_column);
    if (event_idx < 0) throw ValidationError("missing column: " + config.event_column);

    std::vector<CensoredObservation> obs;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (strip(line).empty()) continue;
        auto fields = split_line(line, config.delimiter);
        auto need = static_cast<std::size_t>(std::max(time_idx, event_idx));
        if (fields.size() <= need) {
            throw ValidationError("row " + std::to_string(row) + ": too few fields");
        }
        CensoredObservation o;
        try {
            std::size_t pos = 0;
            auto ts = strip(fields[static_cast<std::size_t>(time_idx)]);
            o.time = std::stod(ts, &pos);
            if (pos != ts.size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw ValidationError("row " + std::to_string(row) + ": bad time value");
        }
        auto es = strip(fields[static_cast<std::size_t>(event_idx)]);
        if (es == "0") {
            o.event = 0;
        } else if (es == "1") {
            o.event = 1;
        } else {
            throw ValidationError("row " + std::to_string(row) +
                                  ": event must be 0 or 1, got '" + es + "'");
        }
        if (!std::isfinite(o.time) || o.time < 0.0) {
            throw ValidationError("row " + std::to_string(row) +
                                  ": time must be finite and nonnegative");
        }
        obs.push_back(o);
    }
    return CensoredSample(std::move(obs));
}

void write_csv(const CensoredSample& sample, const std::string& path,
               const CsvConfig& config) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << config.time_column << config.delimiter << config.event_column << "\n";
    char buf[64];
    for (const auto& o : sample.observations()) {
        std::snprintf(buf, sizeof(buf), "%.17g", o.time);
        out << buf << config.delimiter << o.event << "\n";
    }
}

}  // namespace elci
