use dngap::io::{write_difference_data, write_report, write_scan, write_spectrum, Format};
use dngap::spectra::{spectrum, Bc, DomainSpec};
use dngap::verify::{figure_difference_data, min_coefficient_scan, verify_gap};
use dngap::weyl::GapSequence;

fn with_threads<T: Send>(n: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .unwrap()
        .install(f)
}

fn outputs() -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for format in [Format::Csv, Format::Json] {
        for d in [
            DomainSpec::unit_disk(),
            DomainSpec::reference_sector(),
            DomainSpec::ball(4, 1.0).unwrap(),
        ] {
            let mut buf = Vec::new();
            write_spectrum(&spectrum(&d, Bc::Neumann, 300).unwrap(), format, &mut buf).unwrap();
            out.push(buf);
        }
        let mut buf = Vec::new();
        let r = verify_gap(&DomainSpec::unit_disk(), &GapSequence::DiskBand34, 400).unwrap();
        write_report(&r, format, &mut buf).unwrap();
        out.push(buf);
        let mut buf = Vec::new();
        write_difference_data(
            &figure_difference_data(Some(&"2".parse().unwrap()), 300).unwrap(),
            format,
            &mut buf,
        )
        .unwrap();
        out.push(buf);
        let mut buf = Vec::new();
        write_scan(
            &min_coefficient_scan(&DomainSpec::unit_disk(), 50, 1e-6).unwrap(),
            format,
            &mut buf,
        )
        .unwrap();
        out.push(buf);
    }
    out
}

#[test]
fn outputs_are_byte_identical_across_runs_and_thread_counts() {
    let one = with_threads(1, outputs);
    let again = with_threads(1, outputs);
    let many = with_threads(7, outputs);
    assert_eq!(one, again);
    assert_eq!(one, many);
}

#[test]
fn report_csv_rows_round_trip() {
    let r = verify_gap(
        &DomainSpec::unit_disk(),
        &"2".parse().map(GapSequence::constant_sqrt).unwrap(),
        50,
    )
    .unwrap();
    let mut buf = Vec::new();
    write_report(&r, Format::Csv, &mut buf).unwrap();
    let mut rd = csv::Reader::from_reader(buf.as_slice());
    assert_eq!(
        rd.headers().unwrap(),
        vec!["k", "lambda_k", "mu_index", "mu_value", "margin", "verdict"]
    );
    let rows: Vec<csv::StringRecord> = rd.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 50);
    for (row, rec) in rows.iter().zip(&r.records) {
        assert_eq!(row[1].parse::<f64>().unwrap(), rec.lambda_k);
        assert_eq!(row[3].parse::<f64>().unwrap(), rec.mu_value);
        assert_eq!(&row[5], rec.verdict.as_str());
    }
    assert_eq!(&rows[4][5], "fails");
}

#[test]
fn report_json_round_trip() {
    let r = verify_gap(
        &DomainSpec::reference_sector(),
        &GapSequence::FixedOffset { m: 1 },
        100,
    )
    .unwrap();
    let mut a = Vec::new();
    write_report(&r, Format::Json, &mut a).unwrap();
    let back: dngap::verify::VerificationReport = serde_json::from_slice(&a).unwrap();
    assert_eq!(back, r);
    let mut b = Vec::new();
    write_report(&back, Format::Json, &mut b).unwrap();
    assert_eq!(a, b);
}
