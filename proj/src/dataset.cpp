#include "knnreg/dataset.hpp"

#include "knnreg/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace knnreg {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

std::optional<double> parse_real(std::string_view cell) {
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    if (cell.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

RawTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    RawTable table;
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_fields(line);
        if (!have_header) {
            // Strip a UTF-8 byte-order mark from the first header cell.
            if (!fields.empty() && fields[0].starts_with("\xEF\xBB\xBF")) {
                fields[0].remove_prefix(3);
            }
            std::set<std::string> seen;
            for (auto f : fields) {
                if (f.empty()) {
                    throw ParseError(path.string() + ": header has an empty column name");
                }
                if (!seen.emplace(f).second) {
                    throw ParseError(path.string() + ": duplicate header column \"" + std::string(f) + "\"");
                }
                table.header.emplace_back(f);
            }
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            std::ostringstream msg;
            msg << path.string() << ": row " << table.rows.size() + 1 << " has " << fields.size()
                << " fields, header has " << table.header.size();
            throw ParseError(msg.str());
        }
        table.rows.emplace_back(fields.begin(), fields.end());
    }
    if (!have_header) {
        throw ParseError(path.string() + ": missing header row");
    }
    if (table.rows.empty()) {
        throw ParseError(path.string() + ": no data rows");
    }
    return table;
}

[[noreturn]] void bad_cell(const std::filesystem::path& path, std::size_t row, const std::string& column,
                           const std::string& cell) {
    std::ostringstream msg;
    msg << path.string() << ": row " << row << ", column \"" << column << "\": cannot parse \"" << cell
        << "\" as a finite number";
    throw ParseError(msg.str());
}

// Fills `out` with the feature columns listed in `columns` (header positions).
void fill_features(const std::filesystem::path& path, const RawTable& table, const std::vector<std::size_t>& columns,
                   Dataset& out) {
    std::vector<std::unordered_map<std::string, std::size_t>> codes(out.cols);
    for (std::size_t c = 0; c < out.cols; ++c) {
        for (std::size_t i = 0; i < out.categories[c].size(); ++i) {
            codes[c].emplace(out.categories[c][i], i);
        }
    }
    out.features.resize(out.rows * out.cols);
    for (std::size_t r = 0; r < out.rows; ++r) {
        for (std::size_t c = 0; c < out.cols; ++c) {
            const std::string& cell = table.rows[r][columns[c]];
            double value = 0.0;
            if (out.column_kinds[c] == ColumnKind::categorical) {
                if (cell.empty()) {
                    bad_cell(path, r + 1, out.column_names[c], cell);
                }
                auto [it, inserted] = codes[c].emplace(cell, out.categories[c].size());
                if (inserted) {
                    out.categories[c].push_back(cell);
                }
                value = static_cast<double>(it->second);
            } else {
                const auto parsed = parse_real(cell);
                if (!parsed) {
                    bad_cell(path, r + 1, out.column_names[c], cell);
                }
                value = *parsed;
            }
            out.features[r * out.cols + c] = value;
        }
    }
}

Dataset load_unlabeled(const std::filesystem::path& path, const RawTable& table, const CsvOptions& options) {
    for (const auto& name : options.categorical_columns) {
        if (std::find(table.header.begin(), table.header.end(), name) == table.header.end()) {
            throw ParseError(path.string() + ": categorical column \"" + name + "\" not in header");
        }
    }
    Dataset out;
    out.rows = table.rows.size();
    out.cols = table.header.size();
    out.column_names = table.header;
    for (const auto& name : table.header) {
        out.column_kinds.push_back(options.categorical_columns.contains(name) ? ColumnKind::categorical
                                                                              : ColumnKind::numeric);
    }
    out.categories.assign(out.cols, {});
    std::vector<std::size_t> columns(out.cols);
    std::iota(columns.begin(), columns.end(), std::size_t{0});
    fill_features(path, table, columns, out);
    return out;
}

} // namespace

bool Dataset::all_categorical() const {
    return cols > 0 && std::all_of(column_kinds.begin(), column_kinds.end(),
                                   [](ColumnKind k) { return k == ColumnKind::categorical; });
}

bool Dataset::same_schema(const Dataset& other) const {
    return cols == other.cols && column_kinds == other.column_kinds && column_names == other.column_names;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    Dataset out;
    out.rows = indices.size();
    out.cols = cols;
    out.column_kinds = column_kinds;
    out.column_names = column_names;
    out.categories = categories;
    out.target_name = target_name;
    out.features.reserve(out.rows * cols);
    const bool has_target = target.size() == rows;
    for (const auto i : indices) {
        if (i >= rows) {
            throw InvalidArgument("subset row index out of range");
        }
        const auto r = row(i);
        out.features.insert(out.features.end(), r.begin(), r.end());
        if (has_target) {
            out.target.push_back(target[i]);
        }
    }
    return out;
}

void Dataset::validate() const {
    if (features.size() != rows * cols) {
        throw InvalidArgument("feature matrix size does not match rows x cols");
    }
    if (!target.empty() && target.size() != rows) {
        throw InvalidArgument("target length does not match row count");
    }
    if (column_kinds.size() != cols || column_names.size() != cols || categories.size() != cols) {
        throw InvalidArgument("column metadata length does not match column count");
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        const double v = features[i];
        if (!std::isfinite(v)) {
            throw InvalidArgument("non-finite feature value");
        }
        if (column_kinds[i % cols] == ColumnKind::categorical && (v < 0.0 || v != std::floor(v))) {
            throw InvalidArgument("categorical value is not a non-negative integer code");
        }
    }
    for (const double v : target) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("non-finite target value");
        }
    }
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    if (options.categorical_columns.contains(options.target_column)) {
        throw InvalidArgument("target column \"" + options.target_column + "\" cannot be categorical");
    }
    const RawTable table = read_table(path);
    if (options.target_column.empty()) {
        return load_unlabeled(path, table, options);
    }

    const auto target_it = std::find(table.header.begin(), table.header.end(), options.target_column);
    if (target_it == table.header.end()) {
        throw ParseError(path.string() + ": target column \"" + options.target_column + "\" not in header");
    }
    const auto target_pos = static_cast<std::size_t>(target_it - table.header.begin());
    for (const auto& name : options.categorical_columns) {
        if (std::find(table.header.begin(), table.header.end(), name) == table.header.end()) {
            throw ParseError(path.string() + ": categorical column \"" + name + "\" not in header");
        }
    }

    Dataset out;
    out.target_name = options.target_column;
    out.rows = table.rows.size();
    std::vector<std::size_t> columns;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c == target_pos) {
            continue;
        }
        columns.push_back(c);
        out.column_names.push_back(table.header[c]);
        out.column_kinds.push_back(options.categorical_columns.contains(table.header[c]) ? ColumnKind::categorical
                                                                                          : ColumnKind::numeric);
    }
    out.cols = columns.size();
    if (out.cols == 0) {
        throw ParseError(path.string() + ": no feature columns besides the target");
    }
    out.categories.assign(out.cols, {});
    fill_features(path, table, columns, out);

    out.target.resize(out.rows);
    for (std::size_t r = 0; r < out.rows; ++r) {
        const auto parsed = parse_real(table.rows[r][target_pos]);
        if (!parsed) {
            bad_cell(path, r + 1, options.target_column, table.rows[r][target_pos]);
        }
        out.target[r] = *parsed;
    }
    return out;
}

Dataset load_query_csv(const std::filesystem::path& path, const Dataset& schema) {
    const RawTable table = read_table(path);
    std::vector<std::size_t> columns;
    for (const auto& name : schema.column_names) {
        const auto it = std::find(table.header.begin(), table.header.end(), name);
        if (it == table.header.end()) {
            throw SchemaMismatch(path.string() + ": missing feature column \"" + name + "\"");
        }
        columns.push_back(static_cast<std::size_t>(it - table.header.begin()));
    }
    for (const auto& name : table.header) {
        if (name != schema.target_name &&
            std::find(schema.column_names.begin(), schema.column_names.end(), name) == schema.column_names.end()) {
            throw SchemaMismatch(path.string() + ": unexpected column \"" + name + "\"");
        }
    }
    Dataset out;
    out.rows = table.rows.size();
    out.cols = schema.cols;
    out.column_kinds = schema.column_kinds;
    out.column_names = schema.column_names;
    out.categories = schema.categories;
    out.target_name = schema.target_name;
    fill_features(path, table, columns, out);
    return out;
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    const bool has_target = data.labeled();
    for (std::size_t c = 0; c < data.cols; ++c) {
        out << (c ? "," : "") << data.column_names[c];
    }
    if (has_target) {
        out << ',' << data.target_name;
    }
    out << '\n';
    char buf[64];
    for (std::size_t r = 0; r < data.rows; ++r) {
        for (std::size_t c = 0; c < data.cols; ++c) {
            if (c) {
                out << ',';
            }
            const double v = data.at(r, c);
            if (data.column_kinds[c] == ColumnKind::categorical) {
                out << data.categories[c].at(static_cast<std::size_t>(v));
            } else {
                std::snprintf(buf, sizeof buf, "%.17g", v);
                out << buf;
            }
        }
        if (has_target) {
            std::snprintf(buf, sizeof buf, "%.17g", data.target[r]);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    // mt19937_64 output is fixed by the standard; the bounded draw is done by
    // hand because uniform_int_distribution differs between library vendors.
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        const std::uint64_t bound = i;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t draw = rng();
        while (draw >= limit) {
            draw = rng();
        }
        std::swap(order[i - 1], order[draw % bound]);
    }
    return order;
}

TrainTest split(const Dataset& data, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw InvalidArgument("train fraction must lie strictly between 0 and 1");
    }
    if (data.rows < 2) {
        throw InvalidArgument("split needs at least 2 rows");
    }
    const auto n_train = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(data.rows)));
    if (n_train == 0 || n_train >= data.rows) {
        std::ostringstream msg;
        msg << "train fraction " << spec.train_fraction << " on " << data.rows << " rows leaves an empty side";
        throw InvalidArgument(msg.str());
    }
    const auto order = shuffled_indices(data.rows, spec.seed);
    TrainTest out;
    out.train_rows.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test_rows.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    out.train = data.subset(out.train_rows);
    out.test = data.subset(out.test_rows);
    return out;
}

Standardizer fit_standardizer(const Dataset& train) {
    if (train.rows == 0) {
        throw InvalidArgument("cannot fit a standardizer on an empty dataset");
    }
    Standardizer s;
    s.column_kinds = train.column_kinds;
    s.column_names = train.column_names;
    s.mean.assign(train.cols, 0.0);
    s.sd.assign(train.cols, 0.0);
    const auto n = static_cast<double>(train.rows);
    for (std::size_t c = 0; c < train.cols; ++c) {
        if (train.column_kinds[c] == ColumnKind::categorical) {
            continue;
        }
        double sum = 0.0;
        for (std::size_t r = 0; r < train.rows; ++r) {
            sum += train.at(r, c);
        }
        const double mean = sum / n;
        double sq = 0.0;
        for (std::size_t r = 0; r < train.rows; ++r) {
            const double d = train.at(r, c) - mean;
            sq += d * d;
        }
        s.mean[c] = mean;
        s.sd[c] = std::sqrt(sq / n);
    }
    return s;
}

std::vector<double> Standardizer::apply(std::span<const double> x) const {
    if (x.size() != mean.size()) {
        throw SchemaMismatch("standardizer expects " + std::to_string(mean.size()) + " columns, got " +
                             std::to_string(x.size()));
    }
    std::vector<double> out(x.begin(), x.end());
    for (std::size_t c = 0; c < out.size(); ++c) {
        if (column_kinds[c] == ColumnKind::categorical) {
            continue;
        }
        out[c] = sd[c] > 0.0 ? (x[c] - mean[c]) / sd[c] : 0.0;
    }
    return out;
}

Dataset Standardizer::apply(const Dataset& data) const {
    if (data.column_kinds != column_kinds || data.column_names != column_names) {
        throw SchemaMismatch("dataset columns differ from the standardizer's fit schema");
    }
    Dataset out = data;
    for (std::size_t r = 0; r < out.rows; ++r) {
        const auto z = apply(data.row(r));
        std::copy(z.begin(), z.end(), out.features.begin() + static_cast<std::ptrdiff_t>(r * out.cols));
    }
    return out;
}

} // namespace knnreg
