def solve(arr, k):
  out = []
  for idx in range(len(arr)):
    if arr[idx]>k:
      out.append(arr[idx] * 2)
  parity=0
  if len(arr)%2==0:
    parity = 1
  pairs = 0
  for idx in range(0, len(arr)):
    for j in range(idx+1, len(arr)):
      if (arr[idx] + arr[j])%k == 0:
        pairs+=1
  return len(out) + parity+pairs

n, k = map(int, input().split())
arr = list(map(int, input().split()))
print(solve(arr, k))
