use polydiv::{parallel, table_io};
use polydiv_core::cluster::{clustered_sum, ClusteredSumPlan, SumWeight};
use polydiv_core::estimator::{log_grid, ratio_report, WindowKind};
use polydiv_core::rho::RootTable;
use polydiv_core::sieve::{count_hf_windows, DivisorWindow};
use polydiv_core::IntPolynomial;

fn p(s: &str) -> IntPolynomial {
    s.parse().unwrap()
}

#[test]
fn parallel_table_equals_serial() {
    let f = p("t^3+t+1");
    let pool = parallel::pool(3).unwrap();
    assert_eq!(
        parallel::build_table(&f, 30_000, 5, &pool).unwrap(),
        RootTable::build(&f, 30_000, 5).unwrap()
    );
}

#[test]
fn parallel_counts_equal_serial() {
    let f = p("t^2-t+1");
    let table = RootTable::build(&f, 5000, 0).unwrap();
    let windows: Vec<_> = [(10.0, 20.0), (100.0, 200.0), (1000.0, 5000.0), (3.0, 9.0)]
        .iter()
        .map(|&(y, z)| DivisorWindow::new(y, z).unwrap())
        .collect();
    let serial = count_hf_windows(&f, &table, 300_001, &windows).unwrap();
    for threads in [1, 2, 5] {
        let pool = parallel::pool(threads).unwrap();
        assert_eq!(parallel::count_windows(&f, &table, 300_001, &windows, &pool).unwrap(), serial);
    }
}

#[test]
fn parallel_clustered_sum_is_bit_identical() {
    let f = p("t^2+1");
    let table = RootTable::build(&f, 100_000, 0).unwrap();
    let serial = clustered_sum(&table, 2.0, 2000.0, 0.3, 100_000, SumWeight::PhiF).unwrap();
    let plan = ClusteredSumPlan::new(&table, 2.0, 2000.0, 0.3, 100_000, SumWeight::PhiF, None).unwrap();
    for threads in [1, 4] {
        let pool = parallel::pool(threads).unwrap();
        let s = parallel::clustered_sum(&plan, &pool);
        assert_eq!(s.value.to_bits(), serial.value.to_bits());
        assert_eq!(s.terms, serial.terms);
    }
}

#[test]
fn parallel_report_equals_serial() {
    let f = p("t^2+1");
    let table = RootTable::build(&f, 2000, 0).unwrap();
    let ys = log_grid(10.0, 1000.0, 4).unwrap();
    let kind = WindowKind::Multiple(2.0);
    let serial = ratio_report(&f, &table, 100_000, &ys, kind, 0.1).unwrap();
    let pool = parallel::pool(2).unwrap();
    assert_eq!(parallel::ratio_report(&f, &table, 100_000, &ys, kind, 0.1, &pool).unwrap(), serial);
}

#[test]
fn table_round_trip() {
    let f = p("t^3-2");
    let table = RootTable::build(&f, 20_000, 9).unwrap();
    let mut buf = Vec::new();
    table_io::write_table(&mut buf, &f, &table).unwrap();
    let back = table_io::read_table(&mut buf.as_slice()).unwrap();
    assert_eq!(back.poly, "t^3-2");
    assert_eq!(back.table, table);

    let mut bad = buf.clone();
    bad[0] = b'X';
    assert!(table_io::read_table(&mut bad.as_slice()).is_err());
    assert!(table_io::read_table(&mut &buf[..buf.len() / 2]).is_err());

    let mut csv = Vec::new();
    table_io::write_csv(&mut csv, &RootTable::build(&f, 10, 0).unwrap()).unwrap();
    // t³ ≡ 2 has roots 0 mod 2, 2 mod 3 and 3 mod 5; nothing mod 4, 7 or 9
    assert_eq!(String::from_utf8(csv).unwrap(), "p,k,root\n2,1,0\n3,1,2\n5,1,3\n");
}
