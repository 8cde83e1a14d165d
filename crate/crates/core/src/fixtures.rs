pub const EX1: &str = include_str!("../tests/fixtures/ex1.an");
