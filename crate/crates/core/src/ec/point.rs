use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A rational point: the point at infinity or an affine pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(BigRational, BigRational),
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&BigRational> {
        match self {
            Point::Affine(x, _) => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&BigRational> {
        match self {
            Point::Affine(_, y) => Some(y),
            Point::Infinity => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Coords {
    x: String,
    y: String,
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Point::Infinity => s.serialize_none(),
            Point::Affine(x, y) => Some(Coords { x: x.to_string(), y: y.to_string() }).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match Option::<Coords>::deserialize(d)? {
            None => Ok(Point::Infinity),
            Some(c) => Ok(Point::Affine(
                c.x.parse().map_err(D::Error::custom)?,
                c.y.parse().map_err(D::Error::custom)?,
            )),
        }
    }
}
