use plog_core::weight4::{phi_table, PHI_TABLE_TEXT};
use sha2::{Digest, Sha256};

#[test]
fn table_checksum_is_locked() {
    let digest = Sha256::digest(PHI_TABLE_TEXT.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(hex, "6a1f6e8b212dd415e43d8df130e60c48139b6ca24042b63e8798572fae90dc46");
}

#[test]
fn table_shape() {
    let t = phi_table();
    assert_eq!(t.len(), 42);
    let twos: Vec<_> = t.iter().filter(|e| e.coeff.abs() == 2).collect();
    assert_eq!(twos.len(), 2);
    assert_eq!((twos[0].coeff, twos[0].x.as_str(), twos[0].y.as_str()), (-2, "cad", "ead"));
    assert_eq!((twos[1].coeff, twos[1].x.as_str(), twos[1].y.as_str()), (2, "acd", "bcd"));
    assert_eq!((t[0].coeff, t[0].x.as_str(), t[0].y.as_str()), (1, "aed", "ced"));
    assert_eq!((t[41].coeff, t[41].x.as_str(), t[41].y.as_str()), (1, "bea", "bed"));
}

#[test]
fn table_round_trips_through_json() {
    let t = phi_table();
    let json = serde_json::to_string(&t).unwrap();
    let back: Vec<plog_core::weight4::TableEntry> = serde_json::from_str(&json).unwrap();
    assert_eq!(t, back);
}
