from hnpkit.certificate.certificate import (
    NullstellensatzCertificate,
    bounded_degree_search,
    certificate_from_json,
    certificate_to_json,
    degree_profile,
    find_certificate,
    verify_certificate,
)

__all__ = [
    "NullstellensatzCertificate",
    "bounded_degree_search",
    "certificate_from_json",
    "certificate_to_json",
    "degree_profile",
    "find_certificate",
    "verify_certificate",
]
