#include "ssns/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ssns {

namespace {

constexpr char kMagic[4] = {'S', 'S', 'N', 'S'};

template <typename T>
void put(std::ostream& out, T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.write(buf, sizeof(T));
}

template <typename T>
T take(std::istream& in, const char* what) {
    char buf[sizeof(T)];
    in.read(buf, sizeof(T));
    if (!in) throw IoError(std::string("checkpoint truncated while reading ") + what);
    T value;
    std::memcpy(&value, buf, sizeof(T));
    return value;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
    const Grid& g = ckpt.state.omega.grid;
    if (g.n != ckpt.n) throw IoError("save_checkpoint: header n does not match field grid");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open checkpoint for writing: " + path);

    out.write(kMagic, 4);
    put<std::uint32_t>(out, kCheckpointVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(ckpt.d));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(ckpt.n));
    put<double>(out, ckpt.gamma);
    put<double>(out, ckpt.state.t);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(ckpt.state.step_count));
    put<double>(out, ckpt.state.dt);

    const auto& coeffs = ckpt.state.omega.coeffs;
    for (int r = 0; r < g.n; ++r)
        for (int c = 0; c < g.spectral_cols(); ++c) {
            put<double>(out, coeffs(r, c).real());
            put<double>(out, coeffs(r, c).imag());
        }
    if (!out) throw IoError("write failure on checkpoint: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("checkpoint magic mismatch: not an SSNS checkpoint");
    const auto version = take<std::uint32_t>(in, "version");
    if (version != kCheckpointVersion)
        throw IoError("unsupported checkpoint version " + std::to_string(version) +
                      " (expected " + std::to_string(kCheckpointVersion) + ")");

    Checkpoint ckpt;
    ckpt.d = static_cast<int>(take<std::uint32_t>(in, "d"));
    ckpt.n = static_cast<int>(take<std::uint32_t>(in, "n"));
    ckpt.gamma = take<double>(in, "gamma");
    ckpt.state.t = take<double>(in, "t");
    ckpt.state.step_count = static_cast<long>(take<std::uint64_t>(in, "step_count"));
    ckpt.state.dt = take<double>(in, "dt");

    if (ckpt.d != 2) throw IoError("checkpoint dimension must be 2");
    Grid g{ckpt.n};
    validate(g);
    ckpt.state.omega = zero_field(g);
    for (int r = 0; r < g.n; ++r)
        for (int c = 0; c < g.spectral_cols(); ++c) {
            const double re = take<double>(in, "payload");
            const double im = take<double>(in, "payload");
            ckpt.state.omega.coeffs(r, c) = Complex(re, im);
        }
    char extra;
    if (in.read(&extra, 1)) throw IoError("checkpoint has trailing bytes");
    return ckpt;
}

std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records) {
    if (records.empty()) throw IoError("write_timeseries: no records");
    const auto shells = records.front().b.size();
    std::ostringstream out;
    out << "t,energy,c,diss_cum,k_current,j_ku,barrier_breach";
    for (int j = 0; j < shells; ++j) out << ",b_" << j;
    out << "\n";
    for (const DiagnosticsRecord& rec : records) {
        if (rec.b.size() != shells) throw IoError("write_timeseries: inconsistent shell count");
        out << format_double(rec.t) << ',' << format_double(rec.energy) << ','
            << format_double(rec.c) << ',' << format_double(rec.diss_cum) << ','
            << rec.k_current << ',' << format_double(rec.j_ku) << ','
            << (rec.barrier_breach ? 1 : 0);
        for (int j = 0; j < shells; ++j) out << ',' << format_double(rec.b[j]);
        out << "\n";
    }
    return out.str();
}

void write_timeseries(const std::string& path, const std::vector<DiagnosticsRecord>& records) {
    write_text_file(path, timeseries_csv(records));
}

std::vector<DiagnosticsRecord> read_timeseries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open timeseries: " + path);
    std::string header;
    if (!std::getline(in, header)) throw IoError("timeseries is empty: " + path);

    std::vector<DiagnosticsRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) fields.push_back(item);
        if (fields.size() < 8) throw IoError("timeseries row too short: " + line);
        DiagnosticsRecord rec;
        rec.t = std::stod(fields[0]);
        rec.energy = std::stod(fields[1]);
        rec.c = std::stod(fields[2]);
        rec.diss_cum = std::stod(fields[3]);
        rec.k_current = std::stoi(fields[4]);
        rec.j_ku = std::stod(fields[5]);
        rec.barrier_breach = fields[6] == "1";
        rec.b.resize(fields.size() - 7);
        for (std::size_t j = 7; j < fields.size(); ++j) rec.b[j - 7] = std::stod(fields[j]);
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw IoError("timeseries has no data rows: " + path);
    return records;
}

void write_sweep_report(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "gamma,sup_c,blowup_flag,total_dissipation,t_final\n";
    for (const SweepRow& row : rows)
        out << format_double(row.gamma) << ',' << format_double(row.sup_c) << ','
            << (row.blowup_suspect ? 1 : 0) << ',' << format_double(row.total_dissipation)
            << ',' << format_double(row.t_final) << "\n";
    write_text_file(path, out.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << text;
    if (!out) throw IoError("write failure: " + path);
}

}  // namespace ssns
