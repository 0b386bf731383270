def solve(arr, d):
  m = len(arr)
  count = 0
  while m > 0:
    m //= 2
    count += 1

  # Collect doubled values larger than k
  out = []
  for i in range(len(arr)):
    if arr[i] > d:
      out.append(arr[i] * 2)
  flag = 1 if len(arr) % 2 == 0 else 0
  return count + len(out) + flag

if __name__ == "__main__":
  arr = [3, 6, 9, 12, 15]
  print(solve(arr, 3))
