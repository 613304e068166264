#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace elci {

// One right-censored observation: z = min(lifetime, censoring time),
// event = 1 when the lifetime itself was observed.
struct CensoredObservation {
    double time = 0.0;
    int event = 0;
};

// A validated, sorted right-censored sample. Observations are ordered by
// (time ascending, event descending): at a tied time, events come first.
// Immutable after construction.
class CensoredSample {
public:
    // Sorts and validates. Throws ValidationError for negative/non-finite
    // times or event flags outside {0,1}; DegenerateSample when n < 2 or
    // no observation has event = 1.
    explicit CensoredSample(std::vector<CensoredObservation> observations);

    std::size_t n() const { return obs_.size(); }
    const std::vector<CensoredObservation>& observations() const { return obs_; }
    const CensoredObservation& operator[](std::size_t i) const { return obs_[i]; }

    std::size_t event_count() const { return events_; }
    bool has_tied_times() const { return tied_; }

private:
    std::vector<CensoredObservation> obs_;
    std::size_t events_ = 0;
    bool tied_ = false;
};

struct CsvConfig {
    std::string time_column = "time";
    std::string event_column = "event";
    char delimiter = ',';
};

// Reads a header-first CSV file with time and event columns; extra columns
// are ignored. Row order in the file is discarded.
CensoredSample ingest_csv(const std::string& path, const CsvConfig& config = {});

// Writes the sample back out in the same schema ingest_csv reads.
void write_csv(const CensoredSample& sample, const std::string& path,
               const CsvConfig& config = {});

}  // namespace elci
