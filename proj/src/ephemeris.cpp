#include "orbitforge/ephemeris.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "orbitforge/errors.hpp"

namespace orbitforge {

namespace {

constexpr std::array<const char*, 12> kMonths = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                 "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

/// Days from civil date to the proleptic-Gregorian epoch 1970-01-01
/// (Howard Hinnant's days_from_civil).
long days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

}  // namespace

EpochSpec parse_epoch(const std::string& text) {
    int year = 0, day = 0, hour = 0, minute = 0;
    double second = 0.0;
    char month_name[16] = {0};
    char zone[16] = {0};
    const int matched = std::sscanf(text.c_str(), "%d %15s %d %d:%d:%lf %15s", &year,
                                    month_name, &day, &hour, &minute, &second, zone);
    if (matched != 7 || std::string(zone) != "(UTC)") {
        throw ConfigError("parse_epoch: expected \"YYYY Mon D HH:MM:SS.sss (UTC)\", got \"" +
                          text + "\"");
    }
    int month = 0;
    for (int k = 0; k < 12; ++k) {
        if (month_name == std::string(kMonths[k])) {
            month = k + 1;
            break;
        }
    }
    if (month == 0) {
        throw ConfigError("parse_epoch: unknown month '" + std::string(month_name) + "'");
    }
    if (day < 1 || day > 31 || hour < 0 || hour > 23 || minute < 0 || minute > 59 ||
        second < 0.0 || second >= 61.0) {
        throw ConfigError("parse_epoch: out-of-range time field in \"" + text + "\"");
    }

    const long days = days_from_civil(year, static_cast<unsigned>(month),
                                      static_cast<unsigned>(day));
    const long j2000_days = days_from_civil(2000, 1, 1);
    const double seconds_of_day = hour * 3600.0 + minute * 60.0 + second;

    EpochSpec spec;
    spec.utc_string = text;
    spec.offset_seconds =
        static_cast<double>(days - j2000_days) * 86400.0 + seconds_of_day - 43200.0;
    return spec;
}

GravityBody create_body(const std::string& name) {
    if (name == "earth") {
        GravityBody earth;
        earth.name = "earth";
        earth.mu = constants::mu_earth;
        earth.req = constants::req_earth;
        earth.j2 = constants::j2_earth;
        earth.is_central = true;
        return earth;
    }
    if (name == "sun") {
        GravityBody sun;
        sun.name = "sun";
        sun.mu = constants::mu_sun;
        sun.req = constants::req_sun;
        return sun;
    }
    throw ConfigError("create_body: unsupported body '" + name +
                      "' (supported bodies: earth, sun)");
}

EphemerisRecord ephemeris_state(const GravityBody& body, const EpochSpec& /*epoch*/,
                                SimNanos t) {
    EphemerisRecord record;
    record.body = body.name;
    record.epoch_offset = t;
    if (body.name == "earth") {
        return record;  // zero-base convention: Earth stays at the origin
    }
    if (body.name == "sun") {
        const double theta =
            2.0 * std::numbers::pi * nanos_to_sec(t) / constants::sun_orbit_period_s;
        const double speed =
            2.0 * std::numbers::pi * constants::astronomical_unit / constants::sun_orbit_period_s;
        record.r_N = constants::astronomical_unit *
                     Eigen::Vector3d{std::cos(theta), std::sin(theta), 0.0};
        record.v_N = speed * Eigen::Vector3d{-std::sin(theta), std::cos(theta), 0.0};
        return record;
    }
    throw ConfigError("ephemeris_state: no analytic model for body '" + body.name + "'");
}

std::vector<EphemerisRecord> zero_base_recenter(std::vector<EphemerisRecord> records,
                                                const std::string& base) {
    const EphemerisRecord* base_record = nullptr;
    for (const EphemerisRecord& rec : records) {
        if (rec.body == base) {
            base_record = &rec;
            break;
        }
    }
    if (base_record == nullptr) {
        throw ConfigError("zero_base_recenter: base body '" + base + "' not present");
    }
    const Eigen::Vector3d r0 = base_record->r_N;
    const Eigen::Vector3d v0 = base_record->v_N;
    for (EphemerisRecord& rec : records) {
        rec.r_N -= r0;
        rec.v_N -= v0;
    }
    return records;
}

}  // namespace orbitforge
