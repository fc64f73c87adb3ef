//! Output writers (CSV/JSON/SVG).
