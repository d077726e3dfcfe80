#include "camscout/jsonl.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace camscout {

namespace fs = std::filesystem;

LineLog::LineLog(fs::path path, bool sync_each_write) : path_(std::move(path)), sync_(sync_each_write) {
    if (path_.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path_.parent_path(), ec);
    }
    fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0)
        throw StorageError("cannot open " + path_.string() + ": " + std::strerror(errno));
}

LineLog::~LineLog() {
    if (fd_ >= 0) ::close(fd_);
}

void LineLog::append(std::string_view line) {
    if (line.find('\n') != std::string_view::npos)
        throw StorageError("record contains a newline");
    std::string buf;
    buf.reserve(line.size() + 1);
    buf.append(line);
    buf.push_back('\n');

    std::lock_guard lock(mu_);
    std::size_t off = 0;
    while (off < buf.size()) {
        const ssize_t n = ::write(fd_, buf.data() + off, buf.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw StorageError("write to " + path_.string() + " failed: " + std::strerror(errno));
        }
        off += static_cast<std::size_t>(n);
    }
    if (sync_ && ::fdatasync(fd_) != 0)
        throw StorageError("fdatasync " + path_.string() + " failed: " + std::strerror(errno));
}

LogContents read_lines(const fs::path& path) {
    LogContents out;
    std::error_code ec;
    if (!fs::exists(path, ec)) return out;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StorageError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();

    std::size_t start = 0;
    while (start < data.size()) {
        const auto nl = data.find('\n', start);
        if (nl == std::string::npos) {
            out.torn_tail = data.substr(start);
            break;
        }
        if (nl > start) out.lines.push_back(data.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

std::size_t repair_tail(const fs::path& path) {
    const auto contents = read_lines(path);
    if (contents.torn_tail.empty()) return 0;
    const auto size = fs::file_size(path);
    const auto keep = size - contents.torn_tail.size();
    if (::truncate(path.c_str(), static_cast<off_t>(keep)) != 0)
        throw StorageError("cannot truncate " + path.string() + ": " + std::strerror(errno));
    return contents.torn_tail.size();
}

}  // namespace camscout
