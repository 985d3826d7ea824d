#include "fss/analytics.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "fss/csv.hpp"
#include "fss/format.hpp"

namespace fss {

ReportCell ReportCell::of_count(long long n) {
    ReportCell c;
    c.kind = Kind::count;
    c.count = n;
    return c;
}

ReportCell ReportCell::of_percent(double value) {
    ReportCell c;
    c.kind = Kind::percent;
    c.value = value;
    return c;
}

ReportCell ReportCell::of_mean(double value) {
    ReportCell c;
    c.kind = Kind::mean;
    c.value = value;
    return c;
}

ReportCell ReportCell::of_count_share(long long n, std::optional<double> share) {
    ReportCell c;
    c.kind = Kind::count_share;
    c.count = n;
    c.share = share;
    return c;
}

ReportCell ReportCell::not_available() { return ReportCell{}; }

ReportCell ReportCell::of_text(std::string text) {
    ReportCell c;
    c.kind = Kind::text;
    c.text = std::move(text);
    return c;
}

std::string ReportCell::rendered() const {
    switch (kind) {
        case Kind::count: return std::to_string(count);
        case Kind::percent:
        case Kind::mean: return format_one_decimal(value);
        case Kind::count_share: {
            std::string out = std::to_string(count);
            if (share) out += " (" + format_one_decimal(*share) + "%)";
            else out += " (\xE2\x80\x94)";  // em dash for an undefined share
            return out;
        }
        case Kind::na: return "n.a";
        case Kind::text: return text;
    }
    return "";
}

std::string ReportTable::to_tabular() const {
    std::ostringstream out;
    std::vector<std::string> header;
    header.push_back("row");
    header.insert(header.end(), columns.begin(), columns.end());
    out << csv_join(header) << "\n";
    for (std::size_t i = 0; i < row_keys.size(); ++i) {
        std::vector<std::string> line;
        line.push_back(row_keys[i]);
        for (const ReportCell& cell : rows[i]) line.push_back(cell.rendered());
        out << csv_join(line) << "\n";
    }
    for (const std::string& note : footnotes) out << "# " << note << "\n";
    return out.str();
}

std::string ReportTable::to_records() const {
    nlohmann::ordered_json doc;
    doc["title"] = title;
    doc["columns"] = columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < row_keys.size(); ++i) {
        nlohmann::ordered_json row;
        row["key"] = row_keys[i];
        nlohmann::ordered_json cells = nlohmann::ordered_json::array();
        for (const ReportCell& cell : rows[i]) {
            nlohmann::ordered_json c;
            switch (cell.kind) {
                case ReportCell::Kind::count:
                    c["count"] = cell.count;
                    break;
                case ReportCell::Kind::percent:
                    c["percent"] = cell.value;
                    break;
                case ReportCell::Kind::mean:
                    c["mean"] = cell.value;
                    break;
                case ReportCell::Kind::count_share:
                    c["count"] = cell.count;
                    if (cell.share) c["share"] = *cell.share;
                    else c["share"] = nullptr;
                    break;
                case ReportCell::Kind::na:
                    c["na"] = true;
                    break;
                case ReportCell::Kind::text:
                    c["text"] = cell.text;
                    break;
            }
            cells.push_back(std::move(c));
        }
        row["cells"] = std::move(cells);
        doc["rows"].push_back(std::move(row));
    }
    doc["footnotes"] = footnotes;
    return doc.dump(2) + "\n";
}

NationalityClass record_class(const PerformanceRecord& record, const CorpusIndex& index) {
    auto it = index.researcher_by_id.find(record.researcher_id);
    if (it == index.researcher_by_id.end())
        throw std::invalid_argument("record for unknown researcher " +
                                    record.researcher_id);
    return it->second->nationality_class;
}

namespace {

const char* kRanks[] = {"assistant", "associate", "full"};

std::vector<std::string> uda_rows(const std::vector<PerformanceRecord>& records) {
    std::set<std::string> udas;
    for (const PerformanceRecord& r : records) udas.insert(r.uda_code);
    return {udas.begin(), udas.end()};
}

std::optional<Rank> rank_at(std::size_t i) {
    switch (i) {
        case 0: return Rank::assistant;
        case 1: return Rank::associate;
        case 2: return Rank::full;
        default: return std::nullopt;
    }
}

}  // namespace

ReportTable composition_report(const std::vector<PerformanceRecord>& records,
                               const CorpusIndex& index) {
    ReportTable table;
    table.title = "Professors by UDA and academic rank (share of foreign professors)";
    table.columns = {"assistant", "associate", "full", "total"};

    const std::vector<std::string> udas = uda_rows(records);
    long long unresolved_total = 0;

    auto cell_for = [&](const std::optional<std::string>& uda,
                        const std::optional<Rank>& rank) {
        long long count = 0;
        long long foreign = 0;
        for (const PerformanceRecord& r : records) {
            if (uda && r.uda_code != *uda) continue;
            if (rank && r.rank != *rank) continue;
            count += 1;
            NationalityClass c = record_class(r, index);
            if (c == NationalityClass::foreign) foreign += 1;
        }
        if (count == 0) return ReportCell::of_count_share(0, std::nullopt);
        return ReportCell::of_count_share(
            count, 100.0 * static_cast<double>(foreign) / static_cast<double>(count));
    };

    for (const std::string& uda : udas) {
        std::vector<ReportCell> row;
        for (std::size_t i = 0; i < 3; ++i) row.push_back(cell_for(uda, rank_at(i)));
        row.push_back(cell_for(uda, std::nullopt));
        table.row_keys.push_back(uda);
        table.rows.push_back(std::move(row));
    }
    std::vector<ReportCell> total_row;
    for (std::size_t i = 0; i < 3; ++i) total_row.push_back(cell_for(std::nullopt, rank_at(i)));
    total_row.push_back(cell_for(std::nullopt, std::nullopt));
    table.row_keys.push_back("total");
    table.rows.push_back(std::move(total_row));

    for (const PerformanceRecord& r : records)
        if (record_class(r, index) == NationalityClass::unresolved) unresolved_total += 1;
    if (unresolved_total > 0)
        table.footnotes.push_back(
            "unresolved nationality for " + std::to_string(unresolved_total) +
            " researcher(s); they count in totals but in no foreign share numerator");
    return table;
}

ReportTable average_percentile_report(const std::vector<PerformanceRecord>& records,
                                      const CorpusIndex& index,
                                      NationalityClass class_filter) {
    ReportTable table;
    table.title = "Average FSS percentile (" + to_string(class_filter) +
                  ") by UDA and academic rank";
    table.columns = {"assistant_obs", "assistant_mean", "associate_obs",
                     "associate_mean", "full_obs", "full_mean", "total_obs",
                     "total_mean"};

    auto stats_for = [&](const std::optional<std::string>& uda,
                         const std::optional<Rank>& rank) {
        long long obs = 0;
        double sum = 0.0;
        for (const PerformanceRecord& r : records) {
            if (uda && r.uda_code != *uda) continue;
            if (rank && r.rank != *rank) continue;
            if (record_class(r, index) != class_filter) continue;
            obs += 1;
            sum += r.percentile;
        }
        std::pair<long long, std::optional<double>> out{obs, std::nullopt};
        if (obs > 0) out.second = sum / static_cast<double>(obs);
        return out;
    };

    auto emit_row = [&](const std::optional<std::string>& uda, const std::string& key) {
        std::vector<ReportCell> row;
        for (std::size_t i = 0; i < 4; ++i) {
            auto [obs, mean] = stats_for(uda, rank_at(i));
            row.push_back(ReportCell::of_count(obs));
            row.push_back(mean ? ReportCell::of_mean(*mean) : ReportCell::not_available());
        }
        table.row_keys.push_back(key);
        table.rows.push_back(std::move(row));
    };

    for (const std::string& uda : uda_rows(records)) emit_row(uda, uda);
    emit_row(std::nullopt, "total");
    return table;
}

namespace {

long long tile_count(const std::vector<const PerformanceRecord*>& group, int which) {
    long long n = 0;
    for (const PerformanceRecord* r : group) {
        bool in = false;
        switch (which) {
            case 0: in = r->tiles.top1; break;
            case 1: in = r->tiles.top5; break;
            case 2: in = r->tiles.top10; break;
            case 3: in = r->tiles.above_median; break;
            case 4: in = r->tiles.bottom20; break;
            case 5: in = r->tiles.unproductive; break;
        }
        if (in) ++n;
    }
    return n;
}

}  // namespace

ReportTable tile_share_report(const std::vector<PerformanceRecord>& records,
                              const CorpusIndex& index, NationalityClass class_filter) {
    ReportTable table;
    table.title = "Share of " + to_string(class_filter) +
                  " professors in each FSS distribution tile, by UDA";
    table.columns = {"obs",          "top1",     "top5",        "top10",
                     "above_median", "bottom20", "unproductive"};

    auto emit_row = [&](const std::optional<std::string>& uda, const std::string& key) {
        std::vector<const PerformanceRecord*> group;
        for (const PerformanceRecord& r : records) {
            if (uda && r.uda_code != *uda) continue;
            if (record_class(r, index) != class_filter) continue;
            group.push_back(&r);
        }
        std::vector<ReportCell> row;
        row.push_back(ReportCell::of_count(static_cast<long long>(group.size())));
        for (int tile = 0; tile < 6; ++tile) {
            if (group.empty()) {
                row.push_back(ReportCell::not_available());
            } else {
                row.push_back(ReportCell::of_percent(
                    100.0 * static_cast<double>(tile_count(group, tile)) /
                    static_cast<double>(group.size())));
            }
        }
        table.row_keys.push_back(key);
        table.rows.push_back(std::move(row));
    };

    for (const std::string& uda : uda_rows(records)) emit_row(uda, uda);
    emit_row(std::nullopt, "total");
    return table;
}

namespace {

std::vector<std::pair<std::string, long long>> sorted_counts(
    const std::map<std::string, long long>& counts) {
    std::vector<std::pair<std::string, long long>> out(counts.begin(), counts.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

std::map<std::string, long long> country_counts(
    const std::vector<PerformanceRecord>& records, const CorpusIndex& index) {
    std::map<std::string, long long> counts;
    for (const PerformanceRecord& r : records) {
        if (record_class(r, index) != NationalityClass::foreign) continue;
        const Researcher* person = index.researcher_by_id.at(r.researcher_id);
        counts[person->provenance_country.value_or("unknown")] += 1;
    }
    return counts;
}

ReportTable frequency_table(std::string title,
                            const std::map<std::string, long long>& counts) {
    ReportTable table;
    table.title = std::move(title);
    table.columns = {"count"};
    for (const auto& [key, n] : sorted_counts(counts)) {
        table.row_keys.push_back(key);
        table.rows.push_back({ReportCell::of_count(n)});
    }
    return table;
}

}  // namespace

ReportTable country_frequency(const std::vector<PerformanceRecord>& records,
                              const CorpusIndex& index) {
    return frequency_table("Provenance of foreign professors, by country",
                           country_counts(records, index));
}

ReportTable region_frequency(const std::vector<PerformanceRecord>& records,
                             const CorpusIndex& index,
                             const std::map<std::string, std::string>& region_map) {
    std::map<std::string, long long> regions;
    for (const auto& [country, n] : country_counts(records, index)) {
        auto it = region_map.find(country);
        regions[it == region_map.end() ? country : it->second] += n;
    }
    return frequency_table("Provenance of foreign professors, by region", regions);
}

std::map<std::string, std::string> load_region_map(std::istream& in,
                                                   const std::string& source_name) {
    CsvReader reader(in, source_name);
    std::vector<std::string> fields;
    if (!reader.next(fields))
        throw ParseError(source_name, 1, "missing header row");
    if (fields != std::vector<std::string>{"country", "region"})
        throw ParseError(source_name, 1, "expected header country,region");
    std::map<std::string, std::string> map;
    while (reader.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != 2)
            throw ParseError(source_name, reader.record_line(), "expected 2 fields");
        if (!map.emplace(fields[0], fields[1]).second)
            throw ParseError(source_name, reader.record_line(),
                             "duplicate country " + fields[0]);
    }
    return map;
}

ReportTable compare_groups(const std::vector<PerformanceRecord>& records,
                           const CorpusIndex& index, NationalityClass group_a,
                           NationalityClass group_b) {
    std::vector<const PerformanceRecord*> a, b;
    for (const PerformanceRecord& r : records) {
        NationalityClass c = record_class(r, index);
        if (c == group_a) a.push_back(&r);
        if (c == group_b) b.push_back(&r);
    }
    if (a.empty())
        throw EmptyGroupError("group " + to_string(group_a) + " is empty");
    if (b.empty())
        throw EmptyGroupError("group " + to_string(group_b) + " is empty");

    ReportTable table;
    table.title = "Group comparison: " + to_string(group_a) + " vs " + to_string(group_b);
    table.columns = {to_string(group_a), to_string(group_b), "delta"};

    auto mean_percentile = [](const std::vector<const PerformanceRecord*>& group,
                              std::optional<Rank> rank) -> std::optional<double> {
        long long n = 0;
        double sum = 0.0;
        for (const PerformanceRecord* r : group) {
            if (rank && r->rank != *rank) continue;
            n += 1;
            sum += r->percentile;
        }
        if (n == 0) return std::nullopt;
        return sum / static_cast<double>(n);
    };
    auto tile_share = [](const std::vector<const PerformanceRecord*>& group, int tile) {
        return 100.0 * static_cast<double>(tile_count(group, tile)) /
               static_cast<double>(group.size());
    };

    auto emit_mean_row = [&](const std::string& key, std::optional<Rank> rank) {
        auto ma = mean_percentile(a, rank);
        auto mb = mean_percentile(b, rank);
        std::vector<ReportCell> row;
        row.push_back(ma ? ReportCell::of_mean(*ma) : ReportCell::not_available());
        row.push_back(mb ? ReportCell::of_mean(*mb) : ReportCell::not_available());
        row.push_back(ma && mb ? ReportCell::of_mean(*ma - *mb)
                               : ReportCell::not_available());
        table.row_keys.push_back(key);
        table.rows.push_back(std::move(row));
    };

    emit_mean_row("mean_percentile", std::nullopt);
    for (std::size_t i = 0; i < 3; ++i)
        emit_mean_row(std::string("mean_percentile_") + kRanks[i], rank_at(i));

    const char* tile_names[] = {"top1",     "top5",        "top10",
                                "above_median", "bottom20", "unproductive"};
    for (int tile = 0; tile < 6; ++tile) {
        double sa = tile_share(a, tile);
        double sb = tile_share(b, tile);
        table.row_keys.push_back(std::string("tile_share_") + tile_names[tile]);
        table.rows.push_back({ReportCell::of_percent(sa), ReportCell::of_percent(sb),
                              ReportCell::of_percent(sa - sb)});
    }
    table.footnotes.push_back("observations: " + to_string(group_a) + "=" +
                              std::to_string(a.size()) + ", " + to_string(group_b) + "=" +
                              std::to_string(b.size()));
    return table;
}

}  // namespace fss
