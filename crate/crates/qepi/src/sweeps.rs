//! Seeded corpus sweeps behind the verification commands.
