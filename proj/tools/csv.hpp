#pragma once

#include <initializer_list>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ccr::cli {

inline constexpr int schema_version = 1;

// Rows of mixed text and numbers; doubles carry 12 significant digits.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::string_view table, std::initializer_list<std::string_view> columns)
        : out_(out) {
        out_ << "# ccr_noma " << table << " v" << schema_version << '\n';
        bool first = true;
        for (auto c : columns) {
            if (!first) out_ << ',';
            out_ << c;
            first = false;
        }
        out_ << '\n';
    }

    class Row {
    public:
        explicit Row(std::ostream& out) : out_(out) {}
        Row(const Row&) = delete;
        ~Row() { out_ << line_.str() << '\n'; }

        Row& operator<<(double v) {
            sep();
            line_ << std::setprecision(12) << v;
            return *this;
        }
        Row& operator<<(std::size_t v) {
            sep();
            line_ << v;
            return *this;
        }
        Row& operator<<(int v) {
            sep();
            line_ << v;
            return *this;
        }
        Row& operator<<(std::string_view v) {
            sep();
            line_ << v;
            return *this;
        }

    private:
        void sep() {
            if (!first_) line_ << ',';
            first_ = false;
        }

        std::ostream& out_;
        std::ostringstream line_;
        bool first_ = true;
    };

    Row row() { return Row(out_); }

private:
    std::ostream& out_;
};

// Members joined by ';' so a cluster fits one CSV field.
inline std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace ccr::cli
