fn main() {
    println!("hypertrans");
}
