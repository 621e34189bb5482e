//! The unit-sphere example as a system file.

use fbk_core::fixtures::{sphere_e123, sphere_main, sphere_ring, SphereFixture};

use crate::format::{CertificateEntry, SystemEntry, SystemFile};

/// Systems `Sigma`, `Sigma_prime` and their `Gamma1_` enlargements for
/// both input modules (`_e123` suffix for the coordinate one), with the
/// certificates `cert_main` and `cert_e123`.
pub fn sphere_file() -> SystemFile {
    let mut f = SystemFile::new(sphere_ring());
    for (fx, suffix, cert) in [
        (sphere_main(), "", "cert_main"),
        (sphere_e123(), "_e123", "cert_e123"),
    ] {
        add(&mut f, &fx, suffix, cert);
    }
    f
}

fn add(f: &mut SystemFile, fx: &SphereFixture, suffix: &str, cert: &str) {
    let names = [
        ("Sigma", &fx.sigma),
        ("Sigma_prime", &fx.sigma_prime),
        ("Gamma1_Sigma", &fx.source),
        ("Gamma1_Sigma_prime", &fx.target),
    ];
    for (name, sys) in names {
        f.systems
            .insert(format!("{name}{suffix}"), SystemEntry::of(sys));
    }
    f.certificates.insert(
        cert.to_string(),
        CertificateEntry {
            source: format!("Gamma1_Sigma{suffix}"),
            target: format!("Gamma1_Sigma_prime{suffix}"),
            cert: fx.cert.clone(),
        },
    );
}
