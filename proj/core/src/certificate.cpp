#include <hiso/certificate.hpp>

#include <hiso/errors.hpp>

namespace hiso {

std::string to_string(CertStatus s) {
    switch (s) {
        case CertStatus::Pass: return "pass";
        case CertStatus::Fail: return "fail";
        case CertStatus::Degenerate: return "degenerate";
        case CertStatus::NonDegenerateCertified: return "non-degenerate-certified";
        case CertStatus::Inconclusive: return "inconclusive";
    }
    throw error("to_string: unknown certificate status");
}

CertStatus cert_status_from_string(const std::string& s) {
    if (s == "pass") return CertStatus::Pass;
    if (s == "fail") return CertStatus::Fail;
    if (s == "degenerate") return CertStatus::Degenerate;
    if (s == "non-degenerate-certified") return CertStatus::NonDegenerateCertified;
    if (s == "inconclusive") return CertStatus::Inconclusive;
    throw io_error("unknown certificate status: " + s);
}

} // namespace hiso
